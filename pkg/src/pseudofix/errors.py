"""Exception hierarchy.

Every error raised on bad input derives from :class:`PseudofixError`, so the
command line front end can map all of them to a machine readable error object.
"""


class PseudofixError(Exception):
    """Base class for all errors raised by this package."""

    code = "error"


class NotAGroup(PseudofixError):
    code = "not_a_group"

    def __init__(self, message, triple=None):
        super().__init__(message)
        self.triple = triple


class OrderCapExceeded(PseudofixError):
    code = "order_cap_exceeded"


class PrimeDoesNotDivideOrder(PseudofixError):
    code = "prime_does_not_divide_order"


class NotNormal(PseudofixError):
    code = "not_normal"


class NotASubgroup(PseudofixError):
    code = "not_a_subgroup"


class NotAHomomorphism(PseudofixError):
    code = "not_a_homomorphism"


class PrimePowerOrder(PseudofixError):
    code = "prime_power_order"


class IndicesNotCoprime(PseudofixError):
    code = "indices_not_coprime"


class InconsistentOverride(PseudofixError):
    code = "inconsistent_override"


class InvalidComplex(PseudofixError):
    code = "invalid_complex"

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = tuple(violations)


class NotRegular(PseudofixError):
    code = "not_regular"


class CarrierNotFaceCompatible(PseudofixError):
    code = "carrier_not_face_compatible"

    def __init__(self, message, pairs=()):
        super().__init__(message)
        self.pairs = tuple(pairs)


class HypothesisFails(PseudofixError):
    code = "hypothesis_fails"

    def __init__(self, message, cells=()):
        super().__init__(message)
        self.cells = tuple(cells)


class GlobalCongruenceFails(PseudofixError):
    code = "global_congruence_fails"


class EmptySource(PseudofixError):
    code = "empty_source"


class ComponentMismatch(PseudofixError):
    code = "component_mismatch"


class InconsistentStabilizer(PseudofixError):
    code = "inconsistent_stabilizer"


class NotAComplement(PseudofixError):
    code = "not_a_complement"


class GeneratorConditionFails(PseudofixError):
    code = "generator_condition_fails"


class InconsistentContext(PseudofixError):
    code = "inconsistent_context"


class InvalidInput(PseudofixError):
    """Malformed file contents or arguments."""

    code = "invalid_input"
