"""Exception hierarchy shared by every module."""


class ChaosCryptError(Exception):
    """Base class; the CLI maps any subclass to a data-error exit code."""


class InvalidBakerKey(ChaosCryptError, ValueError):
    pass


class NotBijective(ChaosCryptError):
    pass


class SizeMismatch(ChaosCryptError, ValueError):
    pass


class PixelOutOfRange(ChaosCryptError, ValueError):
    pass


class ConfigKeyMismatch(ChaosCryptError, ValueError):
    pass


class InvalidKeyPerturbation(ChaosCryptError, ValueError):
    pass


class AttackInapplicable(ChaosCryptError):
    pass


class DegenerateMasterKey(ChaosCryptError, ValueError):
    pass


class DegenerateState(ChaosCryptError):
    pass


class BakerRequiresPow2N(ChaosCryptError, ValueError):
    pass


class MalformedHeader(ChaosCryptError, ValueError):
    pass


class NonSquareImage(ChaosCryptError, ValueError):
    pass


class UnsupportedMaxval(ChaosCryptError, ValueError):
    pass
