"""Unit tests for anyon-interferometry."""
