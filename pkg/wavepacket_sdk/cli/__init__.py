"""Command-line interface for the Wave Packet SDK."""
