from .methods import register_all as register_methods


def register_all_methods() -> None:
    """Register every solver with the method registry.

    Add additional registrations here as you create new solver modules.
    """
    register_methods()
