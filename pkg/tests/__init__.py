"""hymcmc tests."""
