"""Structured errors shared across the package.

Every error that represents a mathematical verdict (rather than misuse of
an API) carries the data needed to re-check the verdict independently.
"""


class TorfanError(Exception):
    pass


class NotStronglyConvex(TorfanError):
    def __init__(self, cone):
        self.cone = cone
        super().__init__(f"cone contains a line: {cone}")


class Condition1Violation(TorfanError):
    """A cone of the fan has a face that is not in the fan."""

    def __init__(self, cone, missing_face):
        self.cone = cone
        self.missing_face = missing_face
        super().__init__(f"face {missing_face} of {cone} is missing from the fan")


class Condition2Violation(TorfanError):
    """Two cones whose intersection is not a common face."""

    def __init__(self, sigma, tau, intersection):
        self.sigma = sigma
        self.tau = tau
        self.intersection = intersection
        super().__init__(
            f"intersection {intersection} of {sigma} and {tau} is not a face of both"
        )


class TorusNotDense(TorfanError):
    """Chart characters do not generate the full character lattice as a group."""

    def __init__(self, chart_id, characters):
        self.chart_id = chart_id
        self.characters = tuple(characters)
        super().__init__(
            f"characters of chart {chart_id!r} do not generate the character "
            "lattice as a group, so the chart does not contain the torus as a "
            "dense open subset"
        )


class NotNormal(TorfanError):
    """A chart monoid misses a lattice point of its own cone."""

    def __init__(self, chart_id, witness):
        self.chart_id = chart_id
        self.witness = tuple(witness)
        super().__init__(
            f"chart {chart_id!r} is not normal: saturation element "
            f"{list(witness)} is not generated by the chart characters"
        )


class NonSeparated(TorfanError):
    """The cone of an intersection chart differs from the intersection of cones."""

    def __init__(self, i, j, cone_ij, cone_i_cap_j):
        self.i = i
        self.j = j
        self.cone_ij = cone_ij
        self.cone_i_cap_j = cone_i_cap_j
        super().__init__(
            f"charts {i!r} and {j!r} glue non-separably: the intersection chart "
            f"has cone {cone_ij} but the chart cones intersect in {cone_i_cap_j}"
        )


class FaceCertificateMissing(TorfanError):
    """The intersection cone is not a face of a chart cone, so the claimed
    open embedding of the intersection chart cannot exist."""

    def __init__(self, i, j, sigma, tau):
        self.i = i
        self.j = j
        self.sigma = sigma
        self.tau = tau
        super().__init__(
            f"intersection cone of charts {i!r}, {j!r} is not a face of the "
            f"cone of chart {i!r}; the glueing map is not an open embedding"
        )


class InvalidAtlas(TorfanError):
    pass


class CertificateSearchExhausted(TorfanError):
    """An exact enumeration exceeded the configured ceiling.

    The ceiling guards against pathological inputs; it can be raised with
    the TORFAN_SEARCH_CEILING environment variable.
    """

    def __init__(self, what, ceiling):
        self.what = what
        self.ceiling = ceiling
        super().__init__(
            f"{what}: enumeration exceeded ceiling {ceiling} "
            "(set TORFAN_SEARCH_CEILING to raise it)"
        )
