# ldaapp/routes/scheme.py

from flask import Blueprint, current_app, jsonify

from ..render import RenderContext, to_json_obj
from ..scheme import derive_scheme
from ..utils.decorators import pde_required

scheme_bp = Blueprint('scheme', __name__)


@scheme_bp.route('/scheme', methods=['POST'])
@pde_required
def derive(spec, options):
    """Discretize the posted PDE and eliminate the derivative grid functions"""
    result = derive_scheme(spec.pde, spec.grid, spec.contour, spec.plan,
                           max_iterations=current_app.config['MAX_ITERATIONS'])
    ctx = RenderContext(spec.pde.table, result.functions, result.ranking)
    return jsonify(functions=list(result.functions),
                   system=to_json_obj(list(result.system), ctx),
                   scheme=to_json_obj(list(result.scheme), ctx))
