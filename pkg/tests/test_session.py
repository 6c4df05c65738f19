import pytest

from chartloom.corpus.generate import ChartSpec, deconstruct_svg, generate_synthetic_chart
from chartloom.errors import StepOutOfRange, UnknownField
from chartloom.reuse import DataTable, ReuseSession


def session_for(archetype="grouped_bar", seed=1):
    chart = generate_synthetic_chart(ChartSpec(archetype, seed, "A"))
    template, _, _, _ = deconstruct_svg(chart.svg)
    table = DataTable.from_rows(chart.build.rows)
    return ReuseSession(template=template, table=table), chart


def choices_for(chart, plan):
    out = {}
    enc = list(chart.build.encoding_choices)
    for step in plan:
        if step.kind in ("MapGroupLevel", "MapMark"):
            out[step.index] = {"field": chart.build.level_fields[step.level - 1]}
        else:
            pick = next(c for c in enc if c["channel"] == step.channel
                        or (step.channel_options and c["channel"] in step.channel_options))
            enc.remove(pick)
            out[step.index] = {"channel": pick["channel"], "field": pick["field"]}
    return out


def test_cannot_jump_ahead():
    session, chart = session_for()
    with pytest.raises(StepOutOfRange):
        session.apply_step(2, {"field": "group"})


def test_unknown_field_rejected():
    session, chart = session_for()
    with pytest.raises(UnknownField):
        session.apply_step(0, {"field": "nope"})


def test_channel_must_be_offered():
    session, chart = session_for("range")
    plan = session.plan
    choices = choices_for(chart, plan)
    for i in range(len(plan)):
        if plan[i].kind == "MapEncoding" and plan[i].channel_options:
            with pytest.raises(StepOutOfRange):
                session.apply_step(i, {"channel": "area", "field": "high"})
            break
        session.apply_step(i, choices[i])


def test_type_mismatch_warns_but_proceeds():
    session, chart = session_for()
    session.apply_step(0, {"field": "value"})  # numeric column on a group level
    assert session.cursor == 1
    assert any("numeric" in w for w in session.warnings)


def test_reanswer_truncates_downstream():
    session, chart = session_for()
    choices = choices_for(chart, session.plan)
    for i in range(len(session.plan)):
        session.apply_step(i, choices[i])
    assert session.done
    session.apply_step(1, {"field": "group"})
    assert session.cursor == 2
    assert set(session.choices) == {0, 1}
    assert not session.done


def test_back_preserves_choices_until_overwrite():
    session, chart = session_for()
    choices = choices_for(chart, session.plan)
    session.apply_step(0, choices[0])
    session.apply_step(1, choices[1])
    session.back()
    assert session.cursor == 1
    assert session.choices == {0: choices[0] | {}, 1: session.choices[1]}


def test_replay_is_byte_deterministic():
    a, chart = session_for("stacked_bar")
    b, _ = session_for("stacked_bar")
    choices = choices_for(chart, a.plan)
    for i in range(len(a.plan)):
        a.apply_step(i, choices[i])
        b.apply_step(i, choices[i])
    assert a.partial_render == b.partial_render
    assert a.final_svg() == b.final_svg()


def test_back_button_safety():
    """Truncate at step k, replay the original suffix: same final bytes."""
    session, chart = session_for("stacked_bar")
    choices = choices_for(chart, session.plan)
    for i in range(len(session.plan)):
        session.apply_step(i, choices[i])
    original = session.final_svg()
    k = 1
    session.back()
    session.back()
    session.apply_step(k, choices[k])  # overwrite truncates deeper choices
    for i in range(k + 1, len(session.plan)):
        session.apply_step(i, choices[i])
    assert session.final_svg() == original


def test_partial_render_fades_unmapped_parts():
    session, chart = session_for("grouped_stacked")
    choices = choices_for(chart, session.plan)
    session.apply_step(0, choices[0])
    svg = session.partial_render
    assert 'opacity="0.30"' in svg   # unmapped example geometry
    assert "data-highlight" in svg or "stroke-width" in svg


def test_final_requires_all_steps():
    from chartloom.errors import UnboundStep
    session, chart = session_for()
    session.apply_step(0, {"field": "group"})
    with pytest.raises(UnboundStep):
        session.final_svg()


def test_config_round_trip_reproduces_export():
    from chartloom.config import Config
    session, chart = session_for("bar")
    choices = choices_for(chart, session.plan)
    for i in range(len(session.plan)):
        session.apply_step(i, choices[i])
    svg1 = session.final_svg()
    cfg = Config.from_dict(session.template.config.to_dict())
    replay = ReuseSession(template=session.template, table=session.table, config=cfg)
    for i in range(len(replay.plan)):
        replay.apply_step(i, choices[i])
    assert replay.final_svg() == svg1
