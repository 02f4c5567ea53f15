"""Timestamp handling: ISO 8601 instants and epoch-second shorthand."""

from __future__ import annotations

import re
from datetime import datetime, timezone

_EPOCH_RE = re.compile(r"[+-]?\d+$")


def parse_instant(text: str) -> datetime:
    """Parse an ISO 8601 timestamp or integer epoch seconds into an aware
    UTC datetime. Naive ISO timestamps are taken as UTC.
    """
    text = text.strip()
    if not text:
        raise ValueError("empty timestamp")
    if _EPOCH_RE.fullmatch(text):
        return datetime.fromtimestamp(int(text), tz=timezone.utc)
    candidate = text[:-1] + "+00:00" if text.endswith(("Z", "z")) else text
    try:
        dt = datetime.fromisoformat(candidate)
    except ValueError:
        raise ValueError(f"not an ISO 8601 timestamp or epoch seconds: {text!r}") from None
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.astimezone(timezone.utc)


def format_instant(dt: datetime) -> str:
    """ISO 8601 UTC with trailing Z, seconds precision unless finer needed."""
    dt = dt.astimezone(timezone.utc)
    if dt.microsecond:
        return dt.strftime("%Y-%m-%dT%H:%M:%S.%f") + "Z"
    return dt.strftime("%Y-%m-%dT%H:%M:%SZ")
