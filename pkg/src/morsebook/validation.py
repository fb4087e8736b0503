"""Validation reports shared by the diagram and front checkers."""

from __future__ import annotations


class ValidationReport:
    """A list of (location, message) findings; empty means well-formed."""

    def __init__(self):
        self.issues = []

    def add(self, location, message):
        self.issues.append((location, message))

    @property
    def ok(self):
        return not self.issues

    def raise_if_invalid(self, what="input"):
        if self.issues:
            loc, msg = self.issues[0]
            raise InvalidInput(
                "%s invalid: %s (%s); %d issue(s) total" % (what, msg, loc, len(self.issues))
            )

    def __iter__(self):
        return iter(self.issues)

    def __len__(self):
        return len(self.issues)

    def __repr__(self):
        return "ValidationReport(%r)" % (self.issues,)


class InvalidInput(Exception):
    """An operation was called on data failing its validator."""
