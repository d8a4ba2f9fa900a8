"""End-to-end tests of the hymcmc command line."""
