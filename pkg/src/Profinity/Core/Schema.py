# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at https://mozilla.org/MPL/2.0/.

from typing import Annotated, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from Profinity.Core.Cardinals import CardinalCount
from Profinity.Core.Descriptors import (CartesianDescriptor,
                                        DiscreteDescriptor, FiniteRun,
                                        MultiplicitySeq, OmegaRun,
                                        ProPDescriptor, Tail, TailKind,
                                        TorsionSequence)
from Profinity.Core.Errors import DescriptorError


class FiniteCount(BaseModel):
    model_config = ConfigDict(extra='forbid')

    fin: int = Field(..., ge=0)


Cardinal = Union[Literal['aleph0'], FiniteCount]


class TailModel(BaseModel):
    model_config = ConfigDict(extra='forbid')

    kind: Literal['zero', 'aleph0', 'periodic']
    pattern: list[Cardinal] = Field(default_factory=list)


class MultiplicityModel(BaseModel):
    model_config = ConfigDict(extra='forbid')

    prefix: list[Cardinal]
    tail: TailModel


class LayerModel(BaseModel):
    model_config = ConfigDict(extra='forbid')

    prime: int
    mults: MultiplicityModel


class FiniteRunModel(BaseModel):
    model_config = ConfigDict(extra='forbid')

    kind: Literal['finite']
    entries: list[LayerModel]


class OmegaRunModel(BaseModel):
    model_config = ConfigDict(extra='forbid')

    kind: Literal['omega']
    prefix: list[LayerModel]
    repeating: LayerModel


Segment = Annotated[Union[FiniteRunModel, OmegaRunModel],
                    Field(discriminator='kind')]


class SequenceModel(BaseModel):
    model_config = ConfigDict(extra='forbid')

    segments: list[Segment]


class DescriptorModel(BaseModel):
    model_config = ConfigDict(extra='forbid')

    prime: int
    torsion_type: str
    torsion_seq: SequenceModel
    free_rank: Cardinal


class DiscreteModel(BaseModel):
    model_config = ConfigDict(extra='forbid')

    prime: int
    ulm_seq: SequenceModel
    divisible_rank: Cardinal


class EvidenceModel(BaseModel):
    invariant: str
    left: str
    right: str
    matched: bool


class CertificateModel(BaseModel):
    verdict: bool
    rule: str
    evidence: list[EvidenceModel]


def cardinal_from_json(data) -> CardinalCount:
    if isinstance(data, FiniteCount):
        return CardinalCount(data.fin)

    return CardinalCount.from_json(data)


def mults_to_json(m: MultiplicitySeq):
    m = m.normalize()

    return {'prefix': [c.to_json() for c in m.prefix],
            'tail': {'kind': m.tail.kind.value,
                     'pattern': [c.to_json() for c in m.tail.pattern]}}


def layer_to_json(layer: CartesianDescriptor):
    return {'prime': layer.prime, 'mults': mults_to_json(layer.mults)}


def sequence_to_json(seq: TorsionSequence):
    segments = []
    for segment in seq.segments:
        if isinstance(segment, FiniteRun):
            segments.append({'kind': 'finite',
                             'entries': [layer_to_json(e)
                                         for e in segment.entries]})
        else:
            segments.append({'kind': 'omega',
                             'prefix': [layer_to_json(e)
                                        for e in segment.prefix],
                             'repeating': layer_to_json(segment.repeating)})

    return {'segments': segments}


def descriptor_to_json(d: ProPDescriptor):
    data = {'prime': d.prime,
            'torsion_type': str(d.torsion_type),
            'torsion_seq': sequence_to_json(d.torsion_seq),
            'free_rank': d.free_rank.to_json()}

    return DescriptorModel.model_validate(data).model_dump(mode='json')


def discrete_to_json(e: DiscreteDescriptor):
    data = {'prime': e.prime,
            'ulm_seq': sequence_to_json(e.ulm_seq),
            'divisible_rank': e.divisible_rank.to_json()}

    return DiscreteModel.model_validate(data).model_dump(mode='json')


def layer_from_model(model: LayerModel) -> CartesianDescriptor:
    tail = Tail(TailKind(model.mults.tail.kind),
                tuple(cardinal_from_json(c)
                      for c in model.mults.tail.pattern))
    mults = MultiplicitySeq(tuple(cardinal_from_json(c)
                                  for c in model.mults.prefix), tail)

    return CartesianDescriptor(model.prime, mults)


def sequence_from_model(model: SequenceModel) -> TorsionSequence:
    segments = []
    for segment in model.segments:
        if isinstance(segment, FiniteRunModel):
            segments.append(FiniteRun(tuple(layer_from_model(e)
                                            for e in segment.entries)))
        else:
            segments.append(OmegaRun(tuple(layer_from_model(e)
                                           for e in segment.prefix),
                                     layer_from_model(segment.repeating)))

    return TorsionSequence(tuple(segments))


def sequence_from_json(data) -> TorsionSequence:
    try:
        return sequence_from_model(SequenceModel.model_validate(data))
    except ValidationError as error:
        raise DescriptorError(f'Invalid torsion sequence JSON: '
                              f'{error.error_count()} errors, first: '
                              f'{error.errors()[0]["msg"]}')


def descriptor_from_json(data) -> ProPDescriptor:
    try:
        model = DescriptorModel.model_validate(data)
    except ValidationError as error:
        raise DescriptorError(f'Invalid descriptor JSON: '
                              f'{error.error_count()} errors, first: '
                              f'{error.errors()[0]["msg"]}')

    d = ProPDescriptor(model.prime, sequence_from_model(model.torsion_seq),
                       cardinal_from_json(model.free_rank))

    if str(d.torsion_type) != model.torsion_type:
        raise DescriptorError(f'Declared torsion type {model.torsion_type} '
                              f'does not match the sequence\'s order type '
                              f'{d.torsion_type}.')

    return d


def discrete_from_json(data) -> DiscreteDescriptor:
    try:
        model = DiscreteModel.model_validate(data)
    except ValidationError as error:
        raise DescriptorError(f'Invalid discrete descriptor JSON: '
                              f'{error.error_count()} errors, first: '
                              f'{error.errors()[0]["msg"]}')

    return DiscreteDescriptor(model.prime, sequence_from_model(model.ulm_seq),
                              cardinal_from_json(model.divisible_rank))


def json_schemas():
    """JSON schemas of every document the command line emits."""
    from Profinity.Constructor.Serialization import TreeModel

    return {'descriptor': DescriptorModel.model_json_schema(),
            'discrete': DiscreteModel.model_json_schema(),
            'certificate': CertificateModel.model_json_schema(),
            'tree': TreeModel.model_json_schema()}
