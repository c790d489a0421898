# backend/routes/norm_routes.py
"""
norm, grid and rearrange commands: quasi-norms and rearrangements of a single
input document
"""

import sys
import logging
from typing import BinaryIO, Union

from controllers.report_controller import PROFILE_FORMATS, REPORT_FORMATS, emit_profile, emit_report, parse_input
from utils.config import EXIT_SUCCESS
from utils.data_structures import NormRow, NormTable
from utils.lorentz_norms import LorentzIndex, lorentz_norm, norm_table
from utils.measure_core import SimpleFunction, rearrangement
from utils.sequence_lorentz import NormSequence, seq_lorentz_norm, seq_rearrange
from utils.validators import parse_index_list, parse_index_value

logger = logging.getLogger(__name__)


def _read_document(path: str) -> Union[SimpleFunction, NormSequence]:
    if path == '-':
        return parse_input(sys.stdin)
    return parse_input(path)


def _kind(document) -> str:
    return 'sequence' if isinstance(document, NormSequence) else 'step'


def _single_norm(document, p: float, q: float) -> float:
    if isinstance(document, NormSequence):
        return seq_lorentz_norm(document, p, q).value
    return lorentz_norm(document, LorentzIndex(p, q)).value


def handle_norm(args, config, out: BinaryIO) -> int:
    """Print the L_{p,q} or l_{p,q} norm of the input"""
    document = _read_document(args.input)
    p, q = parse_index_value(args.p, 'p'), parse_index_value(args.q, 'q')

    table = NormTable([NormRow(p, q, _single_norm(document, p, q))], _kind(document))
    logger.info(f"Computed {table.kind} norm", extra={'extra_data': {'p': args.p, 'q': args.q}})
    out.write(emit_report(table, args.format))
    return EXIT_SUCCESS


def handle_grid(args, config, out: BinaryIO) -> int:
    """Norm table over p_list x q_list"""
    document = _read_document(args.input)
    p_values = parse_index_list(args.p_list, 'p-list')
    q_values = parse_index_list(args.q_list, 'q-list')

    if isinstance(document, NormSequence):
        rows = [NormRow(p, q, seq_lorentz_norm(document, p, q).value) for p in p_values for q in q_values]
        table = NormTable(rows, 'sequence')
    else:
        table = NormTable.from_rows(norm_table(document, p_values, q_values))

    out.write(emit_report(table, args.format))
    return EXIT_SUCCESS


def handle_rearrange(args, config, out: BinaryIO) -> int:
    """f* as segments, or the sorted sequence"""
    document = _read_document(args.input)
    if isinstance(document, NormSequence):
        out.write(emit_profile(seq_rearrange(document), args.format))
    else:
        out.write(emit_profile(rearrangement(document), args.format))
    return EXIT_SUCCESS


def register(subparsers) -> None:
    norm = subparsers.add_parser('norm', help='Quasi-norm of a step function or sequence')
    norm.add_argument('--input', required=True, help="Input document ('-' for stdin)")
    norm.add_argument('--p', required=True, help="First index, a number or 'inf'")
    norm.add_argument('--q', required=True, help="Second index, a number or 'inf'")
    norm.add_argument('--format', default='text', choices=REPORT_FORMATS)
    norm.set_defaults(handler=handle_norm)

    grid = subparsers.add_parser('grid', help='Norm table over a grid of indices')
    grid.add_argument('--input', required=True, help="Input document ('-' for stdin)")
    grid.add_argument('--p-list', required=True, help="Comma separated first indices, e.g. 1,2,inf")
    grid.add_argument('--q-list', required=True, help="Comma separated second indices")
    grid.add_argument('--format', default='csv', choices=REPORT_FORMATS)
    grid.set_defaults(handler=handle_grid)

    rearrange = subparsers.add_parser('rearrange', help='Decreasing rearrangement of the input')
    rearrange.add_argument('--input', required=True, help="Input document ('-' for stdin)")
    rearrange.add_argument('--format', default='text', choices=PROFILE_FORMATS)
    rearrange.set_defaults(handler=handle_rearrange)
