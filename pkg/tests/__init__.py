"""Test suite for anyon-interferometry."""
