"""Tests for the dyncharge toolkit."""
