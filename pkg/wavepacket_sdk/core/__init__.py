"""Core configuration, exceptions, numerical linear algebra and the engine."""
