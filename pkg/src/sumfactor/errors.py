"""Shared exception base for domain-level failures.

Every module raises its own exception classes; they all derive from
``DomainError`` so the command-line layer can map them uniformly to a
nonzero exit status without swallowing genuine bugs.
"""


class DomainError(Exception):
    """An operation was handed arguments outside its stated domain."""
