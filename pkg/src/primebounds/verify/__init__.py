from .api import (make_task, verify_lower, verify_pi, verify_ramanujan, verify_rnxi,
                  verify_upper)
from .points import Point
from .theta import theta_envelope_check
from .report import (EXIT_FAIL, EXIT_PASS, EXIT_UNRESOLVED, CheckKind, CheckReport, CheckTask,
                     Record, strip_wall_time)

__all__ = [
    "CheckKind", "CheckReport", "CheckTask", "EXIT_FAIL", "EXIT_PASS", "EXIT_UNRESOLVED",
    "Point", "Record", "theta_envelope_check", "make_task", "strip_wall_time", "verify_lower", "verify_pi", "verify_ramanujan", "verify_rnxi", "verify_upper",
]
