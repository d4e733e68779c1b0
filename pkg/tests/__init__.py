"""Unit test package for verlindepy."""
