"""Tests for kctapes."""
