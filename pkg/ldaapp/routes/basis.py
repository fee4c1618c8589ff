# ldaapp/routes/basis.py

from flask import Blueprint, current_app, jsonify

from ..janet import janet_basis, reduced_groebner_basis
from ..render import RenderContext, ranking_json, to_json_obj
from ..utils.decorators import system_required
from ..utils.helpers import flag

basis_bp = Blueprint('basis', __name__)


@basis_bp.route('/basis', methods=['POST'])
@system_required
def compute_basis(spec, options):
    """Janet basis of the posted system; ?reduced=1 for the reduced Groebner basis"""
    basis = janet_basis(spec.equations, spec.ranking,
                        max_iterations=current_app.config['MAX_ITERATIONS'])
    ctx = RenderContext.of(spec)
    if flag(options, 'reduced'):
        reduced = reduced_groebner_basis(basis)
        return jsonify(ranking=ranking_json(ctx), reduced=to_json_obj(reduced, ctx))
    return jsonify(to_json_obj(basis, ctx))
