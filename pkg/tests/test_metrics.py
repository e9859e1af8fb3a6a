"""Boundary P/R/F1, tag accuracy, and report rendering."""

import json
import random

import pytest

from useg import (
    EvaluationError, Metrics, SegTag, Speaker, Token, Turn, evaluate,
    f_score, report, report_rows,
)

B, I = SegTag.BSEG, SegTag.ISEG


def turn_with(tags, turn_id="T1"):
    tokens = [Token(surface="كلمه", buckwalter="klmh", index=i)
              for i in range(len(tags))]
    return Turn(dialogue_id="D", turn_id=turn_id,
                speaker=Speaker.CUSTOMER, tokens=tokens, tags=list(tags))


def pair(gold_tags, pred_tags):
    return [turn_with(gold_tags)], [turn_with(pred_tags)]


class TestFScore:
    def test_zero_when_both_zero(self):
        assert f_score(0.0, 0.0) == 0.0

    def test_formula_fuzzed(self):
        rng = random.Random(13)
        for _ in range(1000):
            p, r = rng.random(), rng.random()
            f = f_score(p, r)
            if p + r > 0:
                assert abs(f - 2 * p * r / (p + r)) < 1e-15
            if p > 0 and r > 0:
                assert min(p, r) - 1e-15 <= f <= max(p, r) + 1e-15

    def test_equal_inputs_are_a_fixed_point(self):
        assert f_score(0.5, 0.5) == pytest.approx(0.5)


class TestEvaluate:
    def test_identical_tags_are_perfect(self):
        gold, pred = pair([B, I, B, I], [B, I, B, I])
        m = evaluate(gold, pred)
        assert (m.precision, m.recall, m.f1, m.accuracy) == \
            (1.0, 1.0, 1.0, 1.0)
        assert (m.tp, m.fp, m.fn) == (1, 0, 0)

    def test_first_position_is_excluded(self):
        # Only position 0 matches; boundary scoring must not credit it.
        gold, pred = pair([B, B, I], [B, I, B])
        m = evaluate(gold, pred)
        assert (m.tp, m.fp, m.fn) == (0, 1, 1)
        assert m.precision == 0.0 and m.recall == 0.0 and m.f1 == 0.0
        assert m.accuracy == pytest.approx(1 / 3)

    def test_include_first_restores_the_free_boundary(self):
        gold, pred = pair([B, B, I], [B, I, B])
        m = evaluate(gold, pred, include_first=True)
        assert (m.tp, m.fp, m.fn) == (1, 1, 1)
        assert m.precision == pytest.approx(0.5)
        assert m.recall == pytest.approx(0.5)

    def test_single_token_turns_have_no_boundaries(self):
        gold = [turn_with([B], f"T{i}") for i in range(4)]
        pred = [turn_with([B], f"T{i}") for i in range(4)]
        m = evaluate(gold, pred)
        assert (m.precision, m.recall, m.f1) == (0.0, 0.0, 0.0)
        assert m.accuracy == 1.0
        assert m.n_tokens == 4

    def test_counts_add_up_fuzzed(self):
        rng = random.Random(31)
        for _ in range(200):
            turns_g, turns_p = [], []
            boundaries = 0
            for t in range(rng.randint(1, 6)):
                n = rng.randint(1, 9)
                g = [B] + [rng.choice([B, I]) for _ in range(n - 1)]
                p = [B] + [rng.choice([B, I]) for _ in range(n - 1)]
                turns_g.append(turn_with(g, f"T{t}"))
                turns_p.append(turn_with(p, f"T{t}"))
                boundaries += sum(1 for i in range(1, n)
                                  if g[i] is B or p[i] is B)
            m = evaluate(turns_g, turns_p)
            assert m.tp + m.fp + m.fn <= boundaries
            assert m.n_tokens == sum(len(t.tags) for t in turns_g)
            assert 0 <= m.n_correct_tokens <= m.n_tokens

    def test_turn_order_does_not_matter(self):
        gold = [turn_with([B, I], "T1"), turn_with([B, B], "T2")]
        pred = [turn_with([B, B], "T1"), turn_with([B, I], "T2")]
        m1 = evaluate(gold, pred)
        m2 = evaluate(list(reversed(gold)), list(reversed(pred)))
        assert m1 == m2

    def test_token_count_mismatch_names_the_turn(self):
        gold = [turn_with([B, I], "T7")]
        pred = [turn_with([B], "T7")]
        with pytest.raises(EvaluationError) as exc_info:
            evaluate(gold, pred)
        assert "T7" in str(exc_info.value)

    def test_untagged_gold_names_the_turn(self):
        gold = [Turn(dialogue_id="D", turn_id="T3",
                     speaker=Speaker.CUSTOMER,
                     tokens=[Token("كلمه", "klmh", 0)])]
        pred = [turn_with([B], "T3")]
        with pytest.raises(EvaluationError) as exc_info:
            evaluate(gold, pred)
        assert "T3" in str(exc_info.value)

    def test_turn_count_mismatch(self):
        gold, pred = pair([B, I], [B, I])
        with pytest.raises(EvaluationError):
            evaluate(gold, pred + pred)

    def test_empty_input(self):
        with pytest.raises(EvaluationError):
            evaluate([], [])


class TestReport:
    def test_perfect_row(self):
        gold, pred = pair([B, I, B], [B, I, B])
        text = report(evaluate(gold, pred), "table")
        assert "100.00  100.00  100.00  100.00" in text
        assert text.splitlines()[0].split() == ["P", "R", "F1", "Acc"]

    def test_reference_grade_rendering(self):
        # Percentages print to two decimals: P 96.84, R 85.36 must give
        # F1 90.74 through the formula, not hand-rounded intermediates.
        # tp = lcm so that P = 2421/2500 and R = 1067/1250 exactly; the
        # token counts only need to render 95.98.
        m = Metrics.from_counts(tp=2421 * 1067, fp=84_293, fn=443_043,
                                n_tokens=10000, n_correct_tokens=9598)
        assert f"{100 * m.precision:.2f}" == "96.84"
        assert f"{100 * m.recall:.2f}" == "85.36"
        row = report(m, "table").splitlines()[1]
        assert row.split() == ["overall", "96.84", "85.36", "90.74",
                               "95.98"]

    def test_tsv(self):
        gold, pred = pair([B, I], [B, I])
        text = report_rows([("dev", evaluate(gold, pred))], "tsv")
        lines = text.splitlines()
        assert lines[0] == "label\tP\tR\tF1\tAcc"
        assert lines[1] == "dev\t0.00\t0.00\t0.00\t100.00"

    def test_json_carries_the_counts(self):
        gold, pred = pair([B, B, I], [B, I, B])
        payload = json.loads(report(evaluate(gold, pred), "json"))
        assert payload["label"] == "overall"
        assert payload["counts"] == {
            "tp": 0, "fp": 1, "fn": 1,
            "n_tokens": 3, "n_correct_tokens": 1,
        }

    def test_json_rows_round_trip(self):
        gold, pred = pair([B, I, B], [B, I, B])
        m = evaluate(gold, pred)
        rows = json.loads(report_rows([("a", m), ("b", m)], "json"))
        assert [r["label"] for r in rows] == ["a", "b"]
        got = rows[0]["counts"]
        assert Metrics.from_counts(
            got["tp"], got["fp"], got["fn"],
            got["n_tokens"], got["n_correct_tokens"],
        ) == m

    def test_table_aligns_mixed_width_labels(self):
        gold, pred = pair([B, I], [B, I])
        m = evaluate(gold, pred)
        text = report_rows([("a", m), ("longer-label", m)], "table")
        lines = text.splitlines()
        assert len({len(line) for line in lines}) == 1

    def test_unknown_format(self):
        gold, pred = pair([B, I], [B, I])
        with pytest.raises(EvaluationError):
            report(evaluate(gold, pred), "xml")
