"""
Flask web application for the Weyl superalgebra toolkit
JSON endpoints over the same operations as the command line
"""

from flask import Flask, request, jsonify
import logging
import os
import sys

# Add parent directory to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from config import Config
from src.algebra import bracket
from src.cocycles import p_functional
from src.errors import InternalConsistencyError, UsageError, WeylError
from src.parser import format_element, parse_expression
from src.probe import Truncation, triviality_probe
from src.serialization import (cocycle_from_spec, element_to_json, parse_range, probe_report,
                               scalar_to_json)
from src.signature import validate_signature

logger = logging.getLogger(__name__)

app = Flask(__name__)


def _body():
    data = request.get_json(silent=True)
    if not isinstance(data, dict):
        raise UsageError("request body must be a JSON object")
    return data


def _signature(data):
    if 'signature' not in data:
        raise UsageError("missing field 'signature'")
    return validate_signature(data['signature'])


def _expressions(sig, data, count):
    texts = data.get('expressions')
    if not isinstance(texts, list) or len(texts) != count or not all(isinstance(t, str) for t in texts):
        raise UsageError(f"'expressions' must be a list of {count} strings")
    return [parse_expression(sig, text) for text in texts]


def _cocycle(sig, data):
    spec = data.get('cocycle')
    if not isinstance(spec, str):
        raise UsageError("missing field 'cocycle'")
    kind, _, rest = spec.partition(':')
    if kind in ('coboundary', 'table') and rest:
        raise UsageError("file-based cocycles are not served; send the JSON document in 'table'")
    return cocycle_from_spec(sig, spec, inline=data.get('table'))


def _element_result(sig, value):
    return dict(text=format_element(sig, value), **element_to_json(value))


@app.errorhandler(WeylError)
def weyl_error(e):
    """Toolkit errors as JSON; internal invariant failures are server errors"""
    status = 500 if isinstance(e, InternalConsistencyError) else 400
    if status == 500:
        logger.error("internal consistency failure: %s", e)
    return jsonify({
        'success': False,
        'error': str(e),
        'kind': e.kind
    }), status


@app.route('/health')
def health():
    """Liveness check"""
    return jsonify({'success': True, 'status': 'ok'})


@app.route('/api/eval', methods=['POST'])
def evaluate():
    """Canonical form of a single expression"""
    data = _body()
    sig = _signature(data)
    (value,) = _expressions(sig, data, 1)
    return jsonify({'success': True, 'result': _element_result(sig, value)})


@app.route('/api/bracket', methods=['POST'])
def bracket_route():
    """Super-bracket of two expressions"""
    data = _body()
    sig = _signature(data)
    a, b = _expressions(sig, data, 2)
    return jsonify({'success': True, 'result': _element_result(sig, bracket(sig, a, b))})


@app.route('/api/cocycle', methods=['POST'])
def cocycle():
    """Value of a cocycle on two expressions"""
    data = _body()
    sig = _signature(data)
    phi = _cocycle(sig, data)
    a, b = _expressions(sig, data, 2)
    return jsonify({
        'success': True,
        'result': {'cocycle': phi.describe(), 'value': scalar_to_json(phi(a, b))}
    })


@app.route('/api/pfunc', methods=['POST'])
def pfunc():
    data = _body()
    sig = _signature(data)
    (e,) = _expressions(sig, data, 1)
    return jsonify({'success': True, 'result': {'value': scalar_to_json(p_functional(sig, e))}})


@app.route('/api/probe', methods=['POST'])
def probe():
    """Triviality probe on a truncation"""
    data = _body()
    sig = _signature(data)
    psi = _cocycle(sig, data)
    try:
        mu_max = int(data.get('mu_max', 1))
    except (TypeError, ValueError):
        raise UsageError("'mu_max' must be an integer")
    truncation = Truncation(alpha_range=parse_range(data.get('alpha_range', '0:0'), 'alpha_range'),
                            k_range=parse_range(data.get('k_range', '0:0'), 'k_range'),
                            mu_max=mu_max)
    result = triviality_probe(sig, psi, truncation, max_unknowns=Config.WEB_PROBE_MAX_UNKNOWNS)
    return jsonify({'success': True, 'result': probe_report(sig, result)})


if __name__ == '__main__':
    # Validate config
    Config.validate()

    # Run app
    app.run(
        host='0.0.0.0',
        port=Config.FLASK_PORT,
        debug=(Config.FLASK_ENV == 'development')
    )
