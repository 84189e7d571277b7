"""Exception hierarchy shared by the codec stages."""


class OmflipCryptError(Exception):
    """Base class for every error raised by this package."""


class ImageFormatError(OmflipCryptError, ValueError):
    """Malformed or unsupported grayscale image."""


class ContainerFormatError(OmflipCryptError, ValueError):
    """Malformed ciphertext container."""


class KeyFormatError(OmflipCryptError, ValueError):
    """Malformed key file or key that violates its invariants."""


class DecryptionError(OmflipCryptError, ValueError):
    """Ciphertext does not decode under the given key (wrong or corrupted key)."""
