"""Exception hierarchy shared by all lipgroove modules."""


class LipGrooveError(Exception):
    """Base class for every error raised by this package."""


# --- PNM I/O -----------------------------------------------------------------


class PnmError(LipGrooveError):
    pass


class BadMagic(PnmError):
    pass


class MaxvalUnsupported(PnmError):
    pass


class TruncatedPayload(PnmError):
    pass


class BadDimensions(PnmError):
    pass


class MalformedHeader(PnmError):
    pass


# --- lip geometry ------------------------------------------------------------


class NoObject(LipGrooveError):
    """The segment mask holds no object pixel."""


class DegenerateLip(LipGrooveError):
    """Upper/lower lip heights cannot be measured."""


# --- pipeline ----------------------------------------------------------------


class StageError(LipGrooveError):
    def __init__(self, stage, cause):
        super().__init__(f"stage {stage}: {cause}")
        self.stage = stage
        self.cause = cause


# --- template format and store -----------------------------------------------


class TemplateFormatError(LipGrooveError):
    pass


class BadTemplateMagic(TemplateFormatError):
    pass


class UnsupportedVersion(TemplateFormatError):
    pass


class BadTemplateHeader(TemplateFormatError):
    pass


class WrongDims(TemplateFormatError):
    pass


class MalformedMap(TemplateFormatError):
    def __init__(self, message, line):
        super().__init__(f"line {line}: {message}")
        self.line = line


class InvalidMapCharacter(MalformedMap):
    pass


class StoreError(LipGrooveError):
    pass


class DuplicateId(StoreError):
    pass


class InvalidId(StoreError):
    pass


class CorruptTemplateFile(StoreError):
    def __init__(self, filename, cause):
        super().__init__(f"{filename}: {cause}")
        self.filename = filename
        self.cause = cause
