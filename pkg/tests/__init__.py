"""Tests for the Wave Packet SDK."""
