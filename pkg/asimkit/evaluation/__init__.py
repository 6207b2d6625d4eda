"""Evaluation: unit and property test suites, and the reproduction-output checks."""
