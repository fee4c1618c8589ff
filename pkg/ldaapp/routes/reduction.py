# ldaapp/routes/reduction.py

from flask import Blueprint, current_app, jsonify

from ..errors import ValidationError
from ..janet import janet_basis
from ..parser import parse_term
from ..reduction import reduce_to_masters, residue_class_basis
from ..render import RenderContext, to_json_obj
from ..utils.decorators import system_required
from ..utils.helpers import flag

reduction_bp = Blueprint('reduction', __name__)


@reduction_bp.route('/masters', methods=['POST'])
@system_required
def list_masters(spec, options):
    """Master integrals of the posted system under its boundary conditions"""
    basis = janet_basis(spec.equations, spec.ranking,
                        max_iterations=current_app.config['MAX_ITERATIONS'])
    masters = residue_class_basis(basis, spec.boundary)
    return jsonify(masters=to_json_obj(masters, RenderContext.of(spec)))


@reduction_bp.route('/reduce', methods=['POST'])
@system_required
def reduce_target(spec, options):
    """Reduce options['target'] to master integrals"""
    target = options.get('target')
    if not isinstance(target, str) or not target.strip():
        raise ValidationError('target', 'missing integral to reduce')
    term = parse_term(target, spec.table, spec.functions)
    basis = janet_basis(spec.equations, spec.ranking,
                        max_iterations=current_app.config['MAX_ITERATIONS'])
    report = reduce_to_masters(term, basis, spec.boundary, factor=flag(options, 'factor'))
    current_app.logger.debug('reduced %s to %d masters', target, len(report.combination))
    return jsonify(to_json_obj(report, RenderContext.of(spec)))
