# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at https://mozilla.org/MPL/2.0/.

"""
Oracle suites cross-checking the symbolic calculus against finite
computations. A suite is a list of independent zero-argument cases, each
returning True on success; cases run on a thread pool.
"""

import itertools
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from Profinity.Calculus import Torsion
from Profinity.Classifier.Decomposition import (decompose_infinite_product,
                                                peel_free_part, unpeel)
from Profinity.Classifier.Embedding import Embeds, decide_embedding
from Profinity.Classifier.Isomorphism import (abstractly_isomorphic,
                                              topologically_isomorphic)
from Profinity.Constructor.Construction import (construct,
                                                verify_construction_symbolic)
from Profinity.Constructor.Materialization import (check_delta_condition,
                                                   child_quotient,
                                                   materialize)
from Profinity.Constructor.Serialization import tree_from_json, tree_to_json
from Profinity.Constructor.ShiftMaps import diagonal_eta, theta_truncated
from Profinity.Core import Configuration, Schema
from Profinity.Core.Descriptors import (CartesianDescriptor, ProPDescriptor,
                                        TorsionSequence)
from Profinity.Core.Errors import DslError, ProfinityError
from Profinity.Dsl.Lowering import read_canonical, read_descriptor
from Profinity.Dsl.Printer import descriptor_text
from Profinity.Finite.AbelianGroups import (enumerate_groups, torsion_bracket,
                                            ulm_invariants_finite)
from Profinity.Finite.Characters import (CharacterGroup, annihilator,
                                         double_dual_map)
from Profinity.Finite.SmithNormalForm import (SmithNormalForm,
                                              determinantal_divisor)
from Profinity.Logging import DataLogger
from Profinity.Verification import Generators

logger = logging.getLogger(__name__)

# Parser inputs per fuzz case, and the time any one input may take
FUZZ_BATCH = 1000
FUZZ_DEADLINE = 2.0


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: list[int] = field(default_factory=list)
    errors: dict[int, str] = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def cases(self):
        return self.passed + len(self.failed) + len(self.errors)

    @property
    def ok(self):
        return not self.failed and not self.errors

    def row(self):
        status = 'pass' if self.ok else 'FAIL'
        return (f'{self.name:<16} {status:<5} {self.passed:>6}/{self.cases:<6}'
                f' {self.seconds:8.2f}s')


def _groups(p, bound_log2):
    """Every p-group of order at most 2^bound_log2."""
    top = int(bound_log2 / math.log2(p))

    return list(enumerate_groups(p, top))


def snf_cases(settings):
    rng = Generators.rng_for(settings.seed)
    matrices = [Generators.random_matrix(rng)
                for _ in range(settings.snf_matrices)]

    def case(matrix):
        def run():
            snf = SmithNormalForm(matrix).run()
            diagonal = snf.diagonal

            chain = all(b % a == 0 if a else b == 0
                        for a, b in itertools.pairwise(diagonal))

            product = 1
            for i, d in enumerate(diagonal, start=1):
                product *= d
                if determinantal_divisor(matrix, i) != product:
                    return False

            return chain and all(d >= 0 for d in diagonal)
        return run

    return [case(m) for m in matrices]


def duality_cases(settings):
    cases = []
    for p in (2, 3):
        for group in _groups(p, 10):
            def run(group=group):
                if CharacterGroup(group).structure() != group:
                    return False

                if group.order > 2 ** 8:
                    return True

                h = double_dual_map(group).homomorphism()
                return h.is_injective and h.is_surjective
            cases.append(run)

    return cases


def annihilator_cases(settings):
    cases = []
    for p in (2, 3):
        for group in _groups(p, 8):
            for j in range(group.exponent + 1):
                def run(group=group, n=p ** j):
                    found = annihilator(group, torsion_bracket(group, n))
                    return found.same_as(CharacterGroup(group).multiple(n))
                cases.append(run)

    return cases


def ulm_cases(settings):
    cases = []
    for p in (2, 3):
        for group in _groups(p, 10):
            def run(group=group):
                return ulm_invariants_finite(group) == group.multiplicities()
            cases.append(run)

    return cases


def theta_cases(settings):
    cases = []
    for p, n in itertools.product((2, 3, 5), range(1, 7)):
        def run(p=p, n=n):
            theta = theta_truncated(p, n)
            eta = diagonal_eta(p, n + 1)

            return (theta.is_surjective and
                    theta.kernel_order == p ** (n + 1) and
                    theta(eta).is_zero and
                    eta.order_exponent() == n + 1)
        cases.append(run)

    return cases


def _classifier_checks(a, b, c):
    topo_ab = topologically_isomorphic(a, b).verdict
    abstract_ab = abstractly_isomorphic(a, b).verdict

    if not topologically_isomorphic(a, a).verdict:
        return False
    if not abstractly_isomorphic(a, a).verdict:
        return False
    if topo_ab != topologically_isomorphic(b, a).verdict:
        return False
    if abstract_ab != abstractly_isomorphic(b, a).verdict:
        return False
    if topo_ab and not abstract_ab:
        return False

    if a.prime == b.prime and a.first_layer.is_bounded and \
            b.first_layer.is_bounded and topo_ab != abstract_ab:
        return False

    for decide in (topologically_isomorphic, abstractly_isomorphic):
        if (decide(a, b).verdict and decide(b, c).verdict and
                not decide(a, c).verdict):
            return False

    return True


def _nikhom_checks(d):
    # an aleph0 free rank already absorbs further Z_p factors
    if d.free_rank.is_aleph0:
        d = peel_free_part(d).dual_reduced

    for k in (1, 2, 3, 'aleph0'):
        bigger = Torsion.product([d, ProPDescriptor.free(d.prime, k)])
        if not abstractly_isomorphic(d, bigger).verdict:
            return False
        if topologically_isomorphic(d, bigger).verdict:
            return False

    return True


def classifier_cases(settings):
    corpus = Generators.descriptor_corpus(settings.seed, settings.corpus_size)
    # duplicates make the transitivity checks meaningful
    corpus += [d.with_free_rank(d.free_rank) for d in corpus[::5]]

    cases = []
    for i, a in enumerate(corpus):
        b = a if i % 3 == 0 else corpus[(i * 7 + 1) % len(corpus)]
        c = corpus[(i * 13 + 2) % len(corpus)]
        cases.append(lambda a=a, b=b, c=c: _classifier_checks(a, b, c))

        if a.first_layer.is_unbounded:
            cases.append(lambda a=a: _nikhom_checks(a))

        cases.append(lambda a=a: unpeel(peel_free_part(a)) == a)

    return cases


def construction_cases(settings):
    sequences = Generators.sequence_corpus(settings.seed,
                                           max(settings.corpus_size // 2, 100))

    def run(seq):
        return verify_construction_symbolic(construct(seq)) == seq

    return [lambda seq=seq: run(seq) for seq in sequences]


def _case_i_trees():
    trees = []
    for p, r in itertools.product((2, 3), (1, 2, 3)):
        for layer in (CartesianDescriptor.full(p),
                      CartesianDescriptor.full(p, 2)):
            seq = TorsionSequence.of(layer, CartesianDescriptor.cyclic(p, r))
            trees.append(construct(seq))

    return trees


def materialization_cases(settings):
    cases = []
    for tree, level in itertools.product(_case_i_trees(), range(1, 9)):
        def run(tree=tree, level=level):
            p, r = tree.prime, tree.r
            whole = materialize(tree, level).group
            child = materialize(tree.child, level).group
            top = child_quotient(tree, level, 1)

            return (whole.log_order == child.log_order + r and
                    top.exponents == (r,) and top.order == p ** r)
        cases.append(run)

    return cases


def delta_cases(settings):
    cases = []
    for tree, level in itertools.product(_case_i_trees(), range(2, 9)):
        cases.append(lambda tree=tree, level=level:
                     check_delta_condition(tree, level))

    return cases


def embedding_cases(settings):
    rng = Generators.rng_for(settings.seed)
    cases = []
    for n in range(max(settings.corpus_size // 20, 10)):
        p = Generators.PRIMES[n % 2]
        source = ProPDescriptor(p, Generators.random_sequence(
            rng, p, ('b', 'ub', 'uc')[n % 3]), n % 3)
        target = ProPDescriptor.cartesian(Generators.unbounded_layer(rng, p))

        for level in range(1, 9):
            def run(source=source, target=target, level=level):
                verdict = decide_embedding(source, target)
                if not isinstance(verdict, Embeds):
                    return False

                return verdict.witness.finite_map(level).is_injective
            cases.append(run)

    return cases


def decomposition_cases(settings):
    corpus = Generators.descriptor_corpus(settings.seed + 1,
                                          settings.corpus_size)
    cases = []
    for d in corpus:
        if d.torsion_seq.is_empty or d.is_finite or d.first_layer.is_finite:
            continue

        for variant in ('standard', 'cyclic tops'):
            def run(d=d, variant=variant):
                family = decompose_infinite_product(d, variant)
                if not all(not k.is_trivial for k in family.take(3)):
                    return False

                return family.recombine(3) == d
            cases.append(run)

    return cases


def roundtrip_cases(settings):
    corpus = Generators.descriptor_corpus(settings.seed + 2,
                                          settings.corpus_size)

    def run(d):
        if read_canonical(descriptor_text(d)) != d:
            return False
        if Schema.descriptor_from_json(Schema.descriptor_to_json(d)) != d:
            return False

        tree = construct(d.torsion_seq, prime=d.prime)
        return tree_from_json(tree_to_json(tree)) == tree

    return [lambda d=d: run(d) for d in corpus]


def fuzz_cases(settings):
    batches = math.ceil(settings.fuzz_inputs / FUZZ_BATCH)

    def run(batch):
        rng = Generators.rng_for([settings.seed, batch])
        size = min(FUZZ_BATCH, settings.fuzz_inputs - batch * FUZZ_BATCH)

        for _ in range(size):
            source = Generators.random_source(rng)
            start = time.perf_counter()
            try:
                read_descriptor(source)
            except DslError:
                pass

            if time.perf_counter() - start > FUZZ_DEADLINE:
                logger.warning('fuzz: %r took longer than %s s', source,
                               FUZZ_DEADLINE)
                return False

        return True

    return [lambda b=b: run(b) for b in range(batches)]


SUITES = {
    'snf': snf_cases,
    'duality': duality_cases,
    'annihilator': annihilator_cases,
    'ulm': ulm_cases,
    'theta': theta_cases,
    'classifier': classifier_cases,
    'construction': construction_cases,
    'materialization': materialization_cases,
    'delta': delta_cases,
    'embedding': embedding_cases,
    'decomposition': decomposition_cases,
    'roundtrip': roundtrip_cases,
    'fuzz': fuzz_cases,
}


def _outcome(case):
    try:
        return bool(case()), None
    except Exception as error:
        return False, f'{type(error).__name__}: {error}'


def run_suite(name: str, settings=None) -> SuiteResult:
    if name not in SUITES:
        raise ProfinityError(
            f'Unknown suite "{name}"; choose from {", ".join(SUITES)} '
            f'or all.')

    settings = Configuration.get_config().verify if settings is None \
        else settings

    start = time.perf_counter()
    cases = SUITES[name](settings)
    logger.debug('suite %s: %d cases on %d workers', name, len(cases),
                  settings.workers)

    with ThreadPoolExecutor(max_workers=settings.workers) as pool:
        outcomes = list(pool.map(_outcome, cases))

    signal = DataLogger.get_logger().register_signal(
        'suites', DataLogger.LogSignal(name))
    signal.clear()

    result = SuiteResult(name)
    for index, (passed, error) in enumerate(outcomes):
        signal.add_data(index, int(passed))
        if error is not None:
            result.errors[index] = error
        elif passed:
            result.passed += 1
        else:
            result.failed.append(index)

    result.seconds = time.perf_counter() - start

    return result


def run_suites(names, settings=None) -> list[SuiteResult]:
    names = list(SUITES) if names in ('all', ['all']) else list(names)

    return [run_suite(name, settings) for name in names]
