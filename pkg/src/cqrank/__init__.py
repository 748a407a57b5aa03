"""cqrank: streaming contribution-quality ratings for collaborative communities.

Converts per-action community-quality deltas into parameterized player
ratings, rankings and alerts, simulates the collaborative clustering
game, and reproduces the embedded reference experiment.
"""

from .agents import (
    AgentPolicy,
    SessionResult,
    agent_step,
    make_default_policies,
    run_default_session,
    run_session,
)
from .alerts import (
    AbsoluteBelow,
    Alert,
    AlertRule,
    PercentileBottom,
    check_alerts,
)
from .benchmark import BenchReport, RetentionBoundError, bench, retention_bound
from .clustering import (
    Board,
    DotLockedError,
    Dot,
    DragAction,
    DragError,
    OutOfBoundsError,
    UnknownDotError,
    apply_drag,
    centroid,
    clustering_quality,
    make_board,
)
from .config import ConfigError, RunConfig, SimulatorSettings, default_config, load_config
from .core import (
    UNBOUNDED,
    CqrParams,
    Delta,
    cqr_batch,
    deltas_from_values,
    is_unbounded,
    magnitude_filter,
    sign_run_filter,
    windowed_sum,
)
from .domains import (
    ForumState,
    Post,
    QualityDomain,
    RatingTable,
    delta_of_action,
    forum_quality,
    recsys_quality,
)
from .engine import (
    DeltaLedger,
    OutOfOrderError,
    RankingEntry,
    RatingEngine,
    UnknownParameterizationError,
)
from .evaluation import (
    ClassValueMatrix,
    ReplayReport,
    TuneResult,
    interquartile_score,
    quartile_of,
    replay_paper,
    tune,
)
from .eventlog import EventRecord, LogParseError, parse_event_log, serialize_event_log
from .paper_data import PaperDataset, load_paper_dataset

__version__ = "0.1.0"

__all__ = [
    "AbsoluteBelow",
    "AgentPolicy",
    "Alert",
    "AlertRule",
    "BenchReport",
    "Board",
    "ClassValueMatrix",
    "ConfigError",
    "CqrParams",
    "Delta",
    "DeltaLedger",
    "Dot",
    "DotLockedError",
    "DragAction",
    "DragError",
    "EventRecord",
    "ForumState",
    "LogParseError",
    "OutOfBoundsError",
    "OutOfOrderError",
    "PaperDataset",
    "PercentileBottom",
    "Post",
    "QualityDomain",
    "RankingEntry",
    "RatingEngine",
    "RatingTable",
    "ReplayReport",
    "RetentionBoundError",
    "RunConfig",
    "SessionResult",
    "SimulatorSettings",
    "TuneResult",
    "UNBOUNDED",
    "UnknownDotError",
    "UnknownParameterizationError",
    "agent_step",
    "apply_drag",
    "bench",
    "centroid",
    "check_alerts",
    "clustering_quality",
    "cqr_batch",
    "default_config",
    "delta_of_action",
    "deltas_from_values",
    "forum_quality",
    "interquartile_score",
    "is_unbounded",
    "load_config",
    "load_paper_dataset",
    "magnitude_filter",
    "make_board",
    "make_default_policies",
    "parse_event_log",
    "quartile_of",
    "recsys_quality",
    "replay_paper",
    "retention_bound",
    "run_default_session",
    "run_session",
    "serialize_event_log",
    "sign_run_filter",
    "tune",
    "windowed_sum",
]
