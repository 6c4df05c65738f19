"""Reuse session: plan execution with live partial renders and a Back button."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..config import DEFAULT_CONFIG, Config
from ..decorations.model import QUANTITATIVE
from ..errors import StepOutOfRange, UnknownField
from ..grec.model import GrecTemplate
from ..render.render import MODE_FINAL, MODE_PARTIAL, render_chart
from .plan import MAP_ENCODING, ReuseStep, generate_plan
from .schema import infer_schema
from .table import DataTable


@dataclass
class ReuseSession:
    template: GrecTemplate
    table: DataTable
    plan: list[ReuseStep] = field(default_factory=list)
    choices: dict[int, dict] = field(default_factory=dict)
    cursor: int = 0
    partial_render: str = ""
    warnings: list[str] = field(default_factory=list)
    config: Config = field(default_factory=lambda: DEFAULT_CONFIG)

    def __post_init__(self):
        if not self.plan:
            self.plan = generate_plan(self.template, infer_schema(self.template),
                                      self.table)
        if not self.partial_render:
            self._render()

    @property
    def done(self) -> bool:
        return len(self.choices) == len(self.plan)

    def apply_step(self, step_index: int, choice: dict) -> "ReuseSession":
        """Record a choice. Re-answering an earlier step drops the choices
        after it; replaying the same suffix restores the same state."""
        if step_index >= len(self.plan) or step_index < 0:
            raise StepOutOfRange(f"plan has {len(self.plan)} steps")
        if step_index > self.cursor:
            raise StepOutOfRange(
                f"step {step_index} is ahead of the cursor ({self.cursor}); go back first")
        step = self.plan[step_index]
        field_name = choice.get("field")
        if not field_name or not self.table.has(field_name):
            raise UnknownField(f"column {field_name!r} is not in the dataset")
        channel = choice.get("channel")
        if step.kind == MAP_ENCODING:
            allowed = set(step.channel_options or [step.channel])
            if channel is None:
                channel = step.channel
            if channel not in allowed:
                raise StepOutOfRange(
                    f"channel {channel!r} is not offered by step {step_index}")
        col = self.table.column(field_name)
        if step.kind == MAP_ENCODING and step.field_type == QUANTITATIVE \
                and col.field_type != QUANTITATIVE:
            self.warnings.append(
                f"step {step_index}: {field_name} is {col.field_type}, "
                f"a numeric field was expected")
        if step.kind != MAP_ENCODING and col.field_type == QUANTITATIVE:
            self.warnings.append(
                f"step {step_index}: grouping by numeric column {field_name}")

        recorded = {"field": field_name}
        if step.kind == MAP_ENCODING:
            recorded["channel"] = channel
        self.choices[step_index] = recorded
        for k in [k for k in self.choices if k > step_index]:
            del self.choices[k]
        self.cursor = step_index + 1
        self._render()
        return self

    def back(self) -> "ReuseSession":
        if self.cursor > 0:
            self.cursor -= 1
        self._render()
        return self

    def _render(self) -> None:
        mode = MODE_FINAL if self.done else MODE_PARTIAL
        highlight = self.cursor if self.cursor < len(self.plan) else None
        self.partial_render = render_chart(
            self.template, self.table, self.choices, mode=mode,
            plan=self.plan, config=self.config, highlight_step=highlight)

    def final_svg(self) -> str:
        return render_chart(self.template, self.table, self.choices,
                            mode=MODE_FINAL, plan=self.plan, config=self.config)

    def to_dict(self) -> dict:
        return {
            "plan": [s.to_dict() for s in self.plan],
            "choices": {str(k): v for k, v in self.choices.items()},
            "cursor": self.cursor,
            "done": self.done,
            "warnings": list(self.warnings),
        }
