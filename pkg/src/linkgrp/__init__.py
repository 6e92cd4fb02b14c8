"""Word, conjugacy and non-triviality problems for prime alternating link groups."""
