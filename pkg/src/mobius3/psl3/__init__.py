from .qpoly import NotIntegral, QPoly
from .table4 import (ClosedFormLine, InvalidP, a_n_closed, consistency_table1_vs_table4,
                     global_sum_check, integrality_report, mann_check, match_table2,
                     table1_fixture, table2_fixture, table4)
from .census import CensusReport, census, census_all

__all__ = ["NotIntegral", "QPoly", "ClosedFormLine", "InvalidP", "a_n_closed",
           "consistency_table1_vs_table4", "global_sum_check", "integrality_report",
           "mann_check", "match_table2", "table1_fixture", "table2_fixture", "table4",
           "CensusReport", "census", "census_all"]
