"""BDD tests for the anyon-interferometry package."""
