"""Core modules: settings, configuration, errors and caching."""
