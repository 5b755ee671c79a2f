"""Reference fan files shipped with the package."""
