"""Property-based tests for anyon-interferometry."""
