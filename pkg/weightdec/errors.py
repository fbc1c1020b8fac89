""" Exception hierarchy. Every class carries the exit code the command line
surface reports for it. """


class WeightDecError(Exception):
    """ Base class for all errors raised by weightdec """
    exit_code = 1


class ArgumentError(WeightDecError, ValueError):
    """ A precondition on the arguments does not hold """
    exit_code = 2


class RegionError(ArgumentError):
    """ Padding was requested for a point outside UL(anchor), which would
    need a negative number of padded zeros or ones """


class ResourceError(WeightDecError):
    """ A problem exceeds the configured size cap """
    exit_code = 3


class ConsistencyError(WeightDecError, AssertionError):
    """ Two results that must agree mathematically do not """
    exit_code = 1
