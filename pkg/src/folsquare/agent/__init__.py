from folsquare.agent.adjudicate import (
    Resolution,
    ablation_resolution,
    deep_reflection,
    direct_resolution,
    quick_reflection,
    render_execution,
)
from folsquare.agent.pipeline import (
    PipelineConfig,
    PredictionRecord,
    completed_ids,
    run_instances,
    run_pipeline,
)
from folsquare.agent.stages import (
    AgentContext,
    Plan,
    Premise,
    ReasoningTrace,
    StageStats,
    extract_statement,
    format_premises,
    format_target,
    plan,
    plan_states_verdict,
    semantic_structuring,
    solve,
    translate,
)

__all__ = [
    "Resolution", "ablation_resolution", "deep_reflection", "direct_resolution",
    "quick_reflection", "render_execution", "PipelineConfig", "PredictionRecord",
    "completed_ids", "run_instances", "run_pipeline", "AgentContext", "Plan",
    "Premise", "ReasoningTrace", "StageStats", "extract_statement",
    "format_premises", "format_target", "plan", "plan_states_verdict",
    "semantic_structuring", "solve", "translate",
]
