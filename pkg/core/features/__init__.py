"""Command-line reports and the executable invariant suite."""
