"""Unit tests for hymcmc."""
