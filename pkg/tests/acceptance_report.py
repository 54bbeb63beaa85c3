"""Collects one pass/fail line per acceptance criterion for the summary."""

LINES: dict[int, str] = {}


def record(number: int, title: str, ok: bool, detail: str) -> str:
    line = f"criterion {number} {'PASS' if ok else 'FAIL'}: {title} ({detail})"
    LINES[number] = line
    print(line)
    return line
