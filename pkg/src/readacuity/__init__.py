"""Reading-acuity measurement toolkit.

End-to-end support for resolution-controlled reading studies: logMAR unit
conversions, Latin-square scheduling, a reading-session protocol engine with
lossless CSV logging, MNREAD/C-READ-style metrics (MRS, CPS, RA, ACC), SSQ
sickness scoring, render-scale calibration, nonparametric statistics, and
exponential reference curves.
"""

__version__ = "0.1.0"

from .calibration import (
    CalibrationModel,
    LensLevel,
    ScaleResult,
    acuity_for_scale,
    fit_log_model,
    lens_for_level,
    scale_for_target,
)
from .curves import NOMINAL_LEVEL_X, REFERENCE_FITS_VR, ExpCurve, FitError, eval_curve, fit_exp
from .metrics import (
    CpsMethod,
    MrsMethod,
    ReadingCurve,
    ReadingMetrics,
    acc,
    cps,
    curve_from_session,
    metrics_from_session,
    mrs,
    ra,
    reading_speed,
)
from .schedule import build_schedule, latin_square_rows
from .session import (
    Condition,
    CsvError,
    Display,
    Language,
    ResolutionLevel,
    Sentence,
    SentenceSet,
    Session,
    TrialRecord,
    ValidationError,
    check_unique_texts,
    export_csv,
    import_csv,
    load_sentence_set,
    packaged_sentence_sets,
    read_sessions_csv,
    run_trial,
    write_sessions_csv,
)
from .ssq import SsqScore, score_ssq
from .stats import (
    FriedmanResult,
    WilcoxonMode,
    WilcoxonResult,
    adjust,
    bonferroni,
    chi2_sf,
    friedman,
    significance_marker,
    wilcoxon_signed_rank,
)
from .units import (
    REFERENCE_ARCMIN,
    STANDARD_DISTANCE_CM,
    angle_from_logmar,
    decimal_from_logmar,
    distance_shift,
    logmar_from_angle,
    logmar_from_decimal,
    standardize_to_40cm,
    visual_angle,
    xheight_for,
)
