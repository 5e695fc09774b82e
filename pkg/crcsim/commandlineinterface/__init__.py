"""CLI package for crcsim."""
