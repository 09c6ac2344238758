"""Tests for rebalance_lab."""
