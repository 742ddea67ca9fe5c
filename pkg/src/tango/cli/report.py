"""Text and JSON rendering of verdicts."""

from __future__ import annotations

import json
from typing import Iterable, List, Optional, Tuple

from .suite import Verdict


def _short(x, width: int = 60) -> str:
    s = json.dumps(x, sort_keys=True)
    return s if len(s) <= width else s[: width - 3] + "..."


def verdicts_to_json(verdicts: Iterable[Verdict], timing: bool = True) -> str:
    rows = []
    for v in verdicts:
        d = v.to_dict()
        if not timing:
            d["millis"] = 0
        rows.append(d)
    return json.dumps(rows, indent=2, sort_keys=True)


def verdicts_from_json(text: str) -> List[Verdict]:
    return [Verdict.from_dict(d) for d in json.loads(text)]


def render_text(verdicts: Iterable[Verdict], timing: bool = True) -> str:
    verdicts = list(verdicts)
    width = max([len(v.claim) for v in verdicts] + [5])
    lines = [f"{'claim'.ljust(width)}  result  {'ms':>7}  reference"]
    for v in verdicts:
        ms = f"{v.millis:>7}" if timing else f"{'-':>7}"
        lines.append(f"{v.claim.ljust(width)}  {'PASS' if v.passed else 'FAIL':<6}  {ms}  {v.ref}")
    failing = [v for v in verdicts if not v.passed]
    for v in failing:
        lines.append("")
        lines.append(f"{v.claim}: expected {_short(v.expected, 200)}")
        lines.append(f"{' ' * len(v.claim)}  computed {_short(v.computed, 200)}")
    for v in verdicts:
        table = v.computed.get("table") if isinstance(v.computed, dict) else None
        if isinstance(table, str):
            lines.append("")
            lines.append(f"{v.claim} (rendered):")
            lines.append(table.strip("\n"))
    lines.append("")
    passed = sum(v.passed for v in verdicts)
    lines.append(f"{passed}/{len(verdicts)} claims pass")
    if failing:
        lines.append("failing: " + ", ".join(v.claim for v in failing))
    return "\n".join(lines) + "\n"


def emit_report(verdicts: Iterable[Verdict], json_path: Optional[str] = None,
                timing: bool = True) -> Tuple[str, int]:
    """Human-readable report and exit code (0 iff every claim passes).

    When ``json_path`` is given the machine-readable report is written there.
    """
    verdicts = list(verdicts)
    if json_path:
        with open(json_path, "w", encoding="utf-8") as fh:
            fh.write(verdicts_to_json(verdicts, timing) + "\n")
    code = 0 if all(v.passed for v in verdicts) else 1
    return render_text(verdicts, timing), code
