"""Tests for command line exit codes."""

from kctapes.exit_codes import EXIT_DESCRIPTIONS, ExitCode


def test_exit_descriptions_cover_all_enum_values():
    """Ensure every exit code has a human-readable description."""
    assert set(EXIT_DESCRIPTIONS) == {code.value for code in ExitCode}


def test_exit_descriptions_are_non_empty():
    """Ensure all exit code descriptions are non-empty strings."""
    assert all(
        isinstance(description, str) and description
        for description in EXIT_DESCRIPTIONS.values()
    )
