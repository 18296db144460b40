from rimaps.Version import Version

__version__ = Version.version
