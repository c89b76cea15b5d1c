"""Provides the 1D GLS chaotic neuron.

A neuron starts with an initial neural activity q and iterates a
piecewise linear (skew tent or skew binary) map until its trace enters
the epsilon neighbourhood of the stimulus. The four ChaosFEX features
(firing time, firing rate, energy, entropy) are derived from that trace.

fire and extract_features are the straight-line (scalar) implementation.
fire_many runs the same loop for a whole array of stimuli at once and is
what the feature transformation uses.

"""

import math
from collections import namedtuple

import numpy as np
from scipy.special import entr


__all__ = ['ChaosConfig', 'NeuralTrace', 'CfxFeature', 'DomainError',
           'NonConvergence', 'iterate_map', 'fire', 'extract_features',
           'fire_many', 'entropy_from_counts']

SKEW_TENT = 'skew_tent'
SKEW_BINARY = 'skew_binary'
MAP_KINDS = (SKEW_TENT, SKEW_BINARY)

DEFAULT_MAX_ITERATIONS = 100000

# a state may never reach 1.0; rounding at z == b (or just below it)
# would produce it, so such results are pulled back to the largest
# double below 1.0
_BELOW_ONE = float(np.nextafter(1.0, 0.0))

_LN2 = math.log(2.0)


class DomainError(ValueError):
    """Raised if a state or stimulus lies outside the map's domain."""

    def __init__(self, value, domain='[0, 1)'):
        """Constructs a new DomainError object.

        value is the offending value and domain a human readable
        description of the legal interval.

        """
        super(DomainError, self).__init__(value, domain)
        self.value = value
        self.domain = domain

    def __str__(self):
        return "value %r outside of %s" % (self.value, self.domain)


class NonConvergence(Exception):
    """Raised if a neuron does not recognize its stimulus.

    The firing loop gave up after config.max_iterations map
    applications. Callers attach more context on the way up
    (row/attribute of the cell, the grid point being evaluated).

    """

    def __init__(self, stimulus, config, index=None, row=None,
                 attribute=None, grid_point=None):
        # all args go to the base class so that the exception survives
        # pickling (worker processes)
        super(NonConvergence, self).__init__(stimulus, config, index, row,
                                             attribute, grid_point)
        self.stimulus = stimulus
        self.config = config
        self.index = index
        self.row = row
        self.attribute = attribute
        self.grid_point = grid_point

    def with_context(self, **context):
        """Returns a new NonConvergence object.

        The new object carries the attributes of this object,
        updated with **context.

        """
        attrs = {'index': self.index, 'row': self.row,
                 'attribute': self.attribute, 'grid_point': self.grid_point}
        attrs.update(context)
        return NonConvergence(self.stimulus, self.config, **attrs)

    def __str__(self):
        msg = ("stimulus %r not recognized within %d iterations "
               "(q=%r, b=%r, epsilon=%r, map=%s)"
               % (self.stimulus, self.config.max_iterations, self.config.q,
                  self.config.b, self.config.epsilon, self.config.map_kind))
        if self.row is not None:
            msg += " at row %d, attribute %d" % (self.row, self.attribute)
        if self.grid_point is not None:
            msg += " for grid point %s" % _format_point(self.grid_point)
        return msg


def _format_point(point):
    return ', '.join("%s=%s" % (k, v) for k, v in sorted(point.items()))


_ChaosConfigBase = namedtuple('ChaosConfig',
                              ['q', 'b', 'epsilon', 'map_kind',
                               'max_iterations'])


class ChaosConfig(_ChaosConfigBase):
    """The hyperparameters of every neuron in a transformation.

    q is the initial neural activity, b the discrimination threshold
    (the map's breakpoint) and epsilon the half-width of the
    neighbourhood around the stimulus. Instances are immutable.

    """
    __slots__ = ()

    def __new__(cls, q, b, epsilon, map_kind=SKEW_TENT,
                max_iterations=DEFAULT_MAX_ITERATIONS):
        q, b, epsilon = float(q), float(b), float(epsilon)
        for name, value in (('q', q), ('b', b), ('epsilon', epsilon)):
            if not math.isfinite(value):
                raise ValueError("%s must be finite: %r" % (name, value))
        if not 0.0 < q < 1.0:
            raise ValueError("q must lie in (0, 1): %r" % q)
        if not 0.0 < b < 1.0:
            raise ValueError("b must lie in (0, 1): %r" % b)
        if not 0.0 < epsilon <= 0.5:
            raise ValueError("epsilon must lie in (0, 0.5]: %r" % epsilon)
        if map_kind not in MAP_KINDS:
            raise ValueError("unsupported map kind: %r" % map_kind)
        if int(max_iterations) != max_iterations or max_iterations < 1:
            raise ValueError("max_iterations must be a positive integer: %r"
                             % max_iterations)
        return super(ChaosConfig, cls).__new__(cls, q, b, epsilon, map_kind,
                                               int(max_iterations))

    def replace(self, **kwargs):
        """Returns a validated copy with some fields replaced."""
        fields = self._asdict()
        fields.update(kwargs)
        return ChaosConfig(**fields)

    def as_dict(self):
        return dict(self._asdict())


NeuralTrace = namedtuple('NeuralTrace', ['stimulus', 'values', 'firing_time'])

CfxFeature = namedtuple('CfxFeature', ['firing_time', 'firing_rate', 'energy',
                                       'entropy'])


def _step(z, b, map_kind):
    if z < b:
        out = z / b
    elif map_kind == SKEW_TENT:
        out = (1.0 - z) / (1.0 - b)
    else:
        out = (z - b) / (1.0 - b)
    if out >= 1.0:
        out = _BELOW_ONE
    return out


def _step_array(z, b, map_kind):
    left = z < b
    if map_kind == SKEW_TENT:
        out = np.where(left, z / b, (1.0 - z) / (1.0 - b))
    else:
        out = np.where(left, z / b, (z - b) / (1.0 - b))
    out[out >= 1.0] = _BELOW_ONE
    return out


def _check_stimulus(stimulus):
    if not (math.isfinite(stimulus) and 0.0 <= stimulus <= 1.0):
        raise DomainError(stimulus, '[0, 1]')


def iterate_map(z, config):
    """Applies the neuron's map once.

    z is a state in [0, 1). A DomainError is raised otherwise.

    """
    z = float(z)
    if not (math.isfinite(z) and 0.0 <= z < 1.0):
        raise DomainError(z)
    return _step(z, config.b, config.map_kind)


def fire(stimulus, config):
    """Fires a neuron at stimulus and returns its NeuralTrace.

    The trace starts at z(0) = q, which is not part of the returned
    values. If q already lies within epsilon of the stimulus the
    firing time is 0. A NonConvergence is raised if no state enters
    the neighbourhood within config.max_iterations map applications.

    """
    stimulus = float(stimulus)
    _check_stimulus(stimulus)
    z = config.q
    if abs(z - stimulus) < config.epsilon:
        return NeuralTrace(stimulus, (), 0)
    values = []
    for _ in range(config.max_iterations):
        z = _step(z, config.b, config.map_kind)
        values.append(z)
        if abs(z - stimulus) < config.epsilon:
            return NeuralTrace(stimulus, tuple(values), len(values))
    raise NonConvergence(stimulus, config)


def entropy_from_counts(n_ones, n):
    """Returns the Shannon entropy (bits) of a binary symbol sequence.

    n_ones is the number of 1 symbols and n the sequence length; both
    may be arrays. An empty sequence has entropy 0.

    """
    n_ones = np.asarray(n_ones, dtype=float)
    n = np.asarray(n, dtype=float)
    safe = np.where(n > 0, n, 1.0)
    p1 = np.where(n > 0, n_ones / safe, 0.0)
    p0 = np.where(n > 0, (n - n_ones) / safe, 0.0)
    h = (entr(p0) + entr(p1)) / _LN2
    return np.clip(h, 0.0, 1.0)


def extract_features(trace, config):
    """Returns the CfxFeature of a NeuralTrace.

    The firing rate is the fraction of states at or above b (symbol 1
    of the symbolic sequence), the energy the sum of squared states.
    A trace with firing time 0 yields four zeros.

    """
    n = trace.firing_time
    if n == 0:
        return CfxFeature(0, 0.0, 0.0, 0.0)
    ones = 0
    energy = 0.0
    for z in trace.values:
        if z >= config.b:
            ones += 1
        energy += z * z
    entropy = float(entropy_from_counts(ones, n))
    return CfxFeature(n, ones / n, energy, entropy)


def fire_many(stimuli, config):
    """Fires one neuron per stimulus, all with the same config.

    stimuli is an array of values in [0, 1] (any shape; it is
    flattened). Returns the triple (firing_time, ones, energy) of
    flat arrays, where ones counts the states at or above b. Every
    entry equals what fire + extract_features yields for that
    stimulus.

    A DomainError is raised for stimuli outside [0, 1]. If some
    stimulus is not recognized, a NonConvergence carrying its flat
    index is raised.

    """
    x = np.asarray(stimuli, dtype=float).ravel()
    bad = ~(np.isfinite(x) & (x >= 0.0) & (x <= 1.0))
    if bad.any():
        raise DomainError(float(x[np.flatnonzero(bad)[0]]), '[0, 1]')
    firing = np.zeros(x.size, dtype=np.int64)
    ones = np.zeros(x.size, dtype=np.int64)
    energy = np.zeros(x.size, dtype=float)
    active = np.flatnonzero(np.abs(config.q - x) >= config.epsilon)
    z = np.full(active.size, config.q)
    xa = x[active]
    ea = np.zeros(active.size)
    oa = np.zeros(active.size, dtype=np.int64)
    for t in range(1, config.max_iterations + 1):
        if active.size == 0:
            break
        z = _step_array(z, config.b, config.map_kind)
        ea += z * z
        oa += z >= config.b
        hit = np.abs(z - xa) < config.epsilon
        if hit.any():
            done = active[hit]
            firing[done] = t
            ones[done] = oa[hit]
            energy[done] = ea[hit]
            keep = ~hit
            active, z, xa, ea, oa = (active[keep], z[keep], xa[keep],
                                     ea[keep], oa[keep])
    if active.size:
        index = int(active[0])
        raise NonConvergence(float(x[index]), config, index=index)
    return firing, ones, energy
