"""Physical constants, unit conversions, and shared numerical tolerances."""
import math

SPEED_OF_LIGHT = 299_792_458.0  # m/s
BOLTZMANN = 1.380_649e-23  # J/K

# Channel gains below this linear value are floored before entering
# preference-score denominators (avoids division by zero for dead links).
GAIN_FLOOR = 1e-30

# A swap / blocking-pair "strictly improves" only when it clears these
# margins; the verification oracles use the same constants so that the
# stability predicates of the algorithms and their checkers agree.
APPROVAL_REL_TOL = 1e-9
STRICT_REL_TOL = 1e-12


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def linear_to_db(x: float) -> float:
    return 10.0 * math.log10(x)


def dbm_to_watts(dbm: float) -> float:
    return 10.0 ** ((dbm - 30.0) / 10.0)


def watts_to_dbm(w: float) -> float:
    return 10.0 * math.log10(w) + 30.0


def bps_to_mbps(bps: float) -> float:
    return bps / 1e6


def improves(new: float, old: float, rel_tol: float = APPROVAL_REL_TOL) -> bool:
    """Strict improvement test with a relative guard against float churn."""
    return new > old + rel_tol * max(1.0, abs(old))
