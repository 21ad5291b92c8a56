"""Source locations shared by tokens, AST nodes and diagnostics."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True, slots=True)
class SourceSpan:
    # Offsets index the source string (code points); lines and columns are
    # 1-based, and (end_line, end_col) names the position just past the span.
    start_offset: int
    end_offset: int
    start_line: int
    start_col: int
    end_line: int
    end_col: int

    def __post_init__(self) -> None:
        if self.start_offset < 0 or self.end_offset < self.start_offset:
            raise ValueError(f"bad span offsets {self.start_offset}..{self.end_offset}")
        if (self.end_line, self.end_col) < (self.start_line, self.start_col):
            raise ValueError("span ends before it starts")

    def merge(self, other: SourceSpan) -> SourceSpan:
        """Smallest span covering both ``self`` and ``other``."""
        first = self if self.start_offset <= other.start_offset else other
        last = self if self.end_offset >= other.end_offset else other
        return SourceSpan(
            first.start_offset, last.end_offset,
            first.start_line, first.start_col,
            last.end_line, last.end_col,
        )

    def contains(self, other: SourceSpan) -> bool:
        return self.start_offset <= other.start_offset and other.end_offset <= self.end_offset

    def as_list(self) -> list[int]:
        return [self.start_offset, self.end_offset, self.start_line,
                self.start_col, self.end_line, self.end_col]

    @classmethod
    def empty(cls) -> SourceSpan:
        return cls(0, 0, 1, 1, 1, 1)
