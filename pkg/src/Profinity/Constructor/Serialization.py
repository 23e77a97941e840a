# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at https://mozilla.org/MPL/2.0/.

from typing import Annotated, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, RootModel, ValidationError

from Profinity.Constructor.Splits import FamilyRule
from Profinity.Constructor.Trees import (ConstructionCase, DiagonalSpec,
                                         Extension, Leaf, OmegaFamily,
                                         PresentationTree, Product)
from Profinity.Core import Schema
from Profinity.Core.Errors import ConstructionError
from Profinity.Dsl import Printer


class LeafNode(BaseModel):
    model_config = ConfigDict(extra='forbid')

    kind: Literal['leaf']
    case: str
    layer: Schema.LayerModel


class ProductNode(BaseModel):
    model_config = ConfigDict(extra='forbid')

    kind: Literal['product']
    case: str
    prime: int | None = None
    children: list['TreeNode']


class FamilyNode(BaseModel):
    model_config = ConfigDict(extra='forbid')

    kind: Literal['family']
    case: str
    rule: str
    sequence: Schema.SequenceModel


class ExtensionNode(BaseModel):
    model_config = ConfigDict(extra='forbid')

    kind: Literal['extension']
    case: str
    r: int = Field(..., ge=1)
    diagonal: list[int] = Field(..., min_length=1)
    child: 'TreeNode'


TreeNode = Annotated[Union[LeafNode, ProductNode, FamilyNode, ExtensionNode],
                     Field(discriminator='kind')]

ProductNode.model_rebuild()
ExtensionNode.model_rebuild()


class TreeModel(RootModel):
    root: TreeNode


def tree_to_json(tree: PresentationTree):
    match tree:
        case Leaf():
            data = {'kind': 'leaf', 'case': tree.case.value,
                    'layer': Schema.layer_to_json(tree.layer)}

        case Product() if tree.is_omega:
            data = {'kind': 'family', 'case': tree.case.value,
                    'rule': tree.family.rule.value,
                    'sequence': Schema.sequence_to_json(tree.family.seq)}

        case Product():
            data = {'kind': 'product', 'case': tree.case.value,
                    'prime': tree.prime,
                    'children': [tree_to_json(c) for c in tree.family]}

        case Extension():
            data = {'kind': 'extension', 'case': tree.case.value,
                    'r': tree.r, 'diagonal': list(tree.diagonal.residues),
                    'child': tree_to_json(tree.child)}

        case _:
            raise RuntimeError(f'Unknown tree node: {tree!r}')

    return data


def _tree(node) -> PresentationTree:
    match node:
        case LeafNode():
            return Leaf(Schema.layer_from_model(node.layer),
                        ConstructionCase(node.case))

        case FamilyNode():
            family = OmegaFamily(Schema.sequence_from_model(node.sequence),
                                 FamilyRule(node.rule))
            return Product(family, ConstructionCase(node.case))

        case ProductNode():
            children = tuple(_tree(c) for c in node.children)
            return Product(children, ConstructionCase(node.case),
                           empty_prime=None if children else node.prime)

        case ExtensionNode():
            return Extension(_tree(node.child), node.r,
                             DiagonalSpec(tuple(node.diagonal)),
                             ConstructionCase(node.case))

        case _:
            raise RuntimeError(f'Unknown tree node: {node!r}')


def tree_from_json(data) -> PresentationTree:
    try:
        model = TreeModel.model_validate(data)
    except ValidationError as error:
        raise ConstructionError(f'Invalid tree JSON: {error.error_count()} '
                                f'errors, first: {error.errors()[0]["msg"]}')

    try:
        return _tree(model.root)
    except ValueError as error:
        raise ConstructionError(f'Invalid tree JSON: {error}')


def tree_to_text(tree: PresentationTree, children=2, indent=0) -> str:
    """Indented outline; ω-families show their first ``children`` members."""
    pad = '  ' * indent

    match tree:
        case Leaf():
            return f'{pad}leaf {Printer.layer_text(tree.layer)}'

        case Extension():
            residues = ', '.join(str(u) for u in tree.diagonal.residues)
            head = (f'{pad}extension r={tree.r} diagonal=({residues}) '
                    f'[{tree.case.value}]')
            return head + '\n' + tree_to_text(tree.child, children,
                                              indent + 1)

        case Product() if tree.is_omega:
            lines = [f'{pad}product over omega by {tree.family.rule.value} '
                     f'[{tree.case.value}]']
            for n in range(children):
                child = Printer.sequence_text(tree.family.child_sequence(n))
                lines.append(f'{pad}  child {n}: {child}')
                lines.append(tree_to_text(tree.family.child(n), children,
                                          indent + 2))
            lines.append(f'{pad}  ...')
            return '\n'.join(lines)

        case Product():
            lines = [f'{pad}product of {len(tree.family)} '
                     f'[{tree.case.value}]']
            lines.extend(tree_to_text(c, children, indent + 1)
                         for c in tree.family)
            return '\n'.join(lines)

        case _:
            raise RuntimeError(f'Unknown tree node: {tree!r}')
