"""
Custom exceptions to raise within SliceMarket.
"""


class StructuralError(Exception):
    """
    A scenario or allocation refers to something which doesn't exist,
    e.g. an unknown path id, or a path node without a demand vector.
    """
    def __init__(self, message, key=None):
        super(StructuralError, self).__init__(message)
        self.key = key


class DomainError(ValueError):
    """
    A utility function or best response was evaluated outside its domain,
    e.g. marginal utility at zero traffic or a non-positive path cost.
    """
    def __init__(self, message, value=None):
        super(DomainError, self).__init__(message)
        self.value = value


class UndefinedDemand(ValueError):
    """
    Demand inference was given an all-zero utilization vector.
    """


class InvalidScenario(Exception):
    """
    A scenario document or scenario generator configuration was rejected.
    """
    def __init__(self, message, field=""):
        super(InvalidScenario, self).__init__(message)
        self.field = field


class InvalidSettings(Exception):
    """
    Invalid settings were found by
    slicemarket.models.settings.validation.ValidateSettings
    """
    def __init__(self, message, field="", suggestion=None):
        self.field = field
        self.suggestion = suggestion
        super(InvalidSettings, self).__init__(message)


class OutputError(IOError):
    """
    Writing a CSV table failed.
    """
    def __init__(self, message, path=None):
        super(OutputError, self).__init__(message)
        self.path = path

    def GetPath(self):
        """
        Returns the destination path which couldn't be written.
        """
        return self.path
