"""Command-line interface over the shared TOML input document."""
