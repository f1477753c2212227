"""Family-generic engine: counts, enumeration, branches and reports."""
