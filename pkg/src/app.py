#!/usr/bin/env python3
"""
Flask API for PAC interval calibration
Calibrates scale factors, builds intervals and runs experiment suites in the background
"""

import logging
import math
from datetime import datetime
from threading import Thread, Lock

from flask import Flask, jsonify, request
from flask_cors import CORS
from werkzeug.exceptions import HTTPException

from src import config
from src.errors import InvalidArgumentError, PacError
from src.experiments import config_from_mapping, run_suite
from src.log import setup_logging
from src.models import CalibrationRecord, GaussianPrediction, PacTarget
from src.pac import build_intervals, calibrate, clip_interval

logger = logging.getLogger(__name__)

app = Flask(__name__)
CORS(app)

# Global state
suite_state = {
    'is_running': False,
    'status_message': 'Ready',
    'last_run': None,
    'error': None,
    'trials_done': 0,
    'trials_total': 0,
    'output_dir': config.OUTPUT_DIR,
}
suite_lock = Lock()


def progress_callback(progress_data):
    """Callback to update progress from the suite runner"""
    with suite_lock:
        suite_state['trials_done'] = progress_data.get('trials_done', 0)
        suite_state['trials_total'] = progress_data.get('trials_total', 0)
        suite_state['status_message'] = (
            f"Running... Trial {suite_state['trials_done']}/{suite_state['trials_total']}"
        )


def run_suite_background(cfg, out_dir):
    """Run a suite in a background thread; the caller has already marked it running"""
    try:
        report = run_suite(cfg, out_dir, progress_callback=progress_callback)
        with suite_lock:
            suite_state['last_run'] = datetime.now().isoformat()
            if report.complete:
                suite_state['status_message'] = f'Completed! Rows: {len(report.rows)}'
            else:
                suite_state['error'] = f'{len(report.errors)} trials failed'
                suite_state['status_message'] = f'Completed with errors: {len(report.errors)} trials failed'
    except Exception as e:
        logger.exception("suite failed")
        with suite_lock:
            suite_state['error'] = str(e)
            suite_state['status_message'] = f'Error: {e}'
    finally:
        with suite_lock:
            suite_state['is_running'] = False


def _body() -> dict:
    data = request.get_json(silent=True)
    if not isinstance(data, dict):
        raise InvalidArgumentError('request body must be a JSON object')
    return data


def _number(value) -> float:
    return None if value is None or math.isinf(value) else value


@app.errorhandler(PacError)
def handle_library_error(e):
    return jsonify({'success': False, 'error': str(e)}), 400


@app.errorhandler(KeyError)
def handle_missing_field(e):
    return jsonify({'success': False, 'error': f'missing field: {e.args[0]}'}), 400


@app.errorhandler(Exception)
def handle_unexpected_error(e):
    if isinstance(e, HTTPException):
        return e
    logger.exception("unexpected error")
    return jsonify({'success': False, 'error': str(e)}), 500


@app.route('/api/calibrate', methods=['POST'])
def calibrate_records():
    """Calibrate c* from records and a (epsilon, delta) target"""
    data = _body()
    try:
        records = [
            CalibrationRecord.from_values(float(r['mu']), float(r['sigma']), float(r['y']))
            for r in data['records']
        ]
        target = PacTarget(float(data['epsilon']), float(data.get('delta', config.DEFAULT_DELTA)))
    except PacError:
        raise
    except (TypeError, ValueError) as e:
        raise InvalidArgumentError(f'bad calibration request: {e}') from e

    result = calibrate(records, target)
    return jsonify({'success': True, **result.to_dict()})


@app.route('/api/intervals', methods=['POST'])
def intervals():
    """Intervals mu +/- c*sigma, optionally clipped to the label range"""
    data = _body()
    try:
        c = float(data['c'])
        predictions = [GaussianPrediction(float(p['mu']), float(p['sigma'])) for p in data['predictions']]
    except PacError:
        raise
    except (TypeError, ValueError) as e:
        raise InvalidArgumentError(f'bad interval request: {e}') from e

    built = build_intervals(predictions, c)
    if data.get('clip', False):
        built = [clip_interval(interval) for interval in built]
    return jsonify({
        'success': True,
        'intervals': [
            {
                'lower': _number(i.lower),
                'upper': _number(i.upper),
                'width': _number(i.width),
            }
            for i in built
        ],
    })


@app.route('/api/run', methods=['POST'])
def start_run():
    """Start a suite from a JSON config"""
    data = request.get_json(silent=True) or {}
    if not isinstance(data, dict):
        raise InvalidArgumentError('request body must be a JSON object')
    out_dir = data.pop('out_dir', config.OUTPUT_DIR)
    cfg = config_from_mapping(data)

    with suite_lock:
        if suite_state['is_running']:
            return jsonify({
                'success': False,
                'message': 'A suite is already running'
            }), 400
        suite_state.update({
            'is_running': True,
            'status_message': 'Starting suite...',
            'error': None,
            'trials_done': 0,
            'trials_total': len(cfg.seed_list),
            'output_dir': str(out_dir),
        })

    thread = Thread(target=run_suite_background, args=(cfg, out_dir))
    thread.daemon = True
    thread.start()

    return jsonify({
        'success': True,
        'message': 'Suite started',
        'config_hash': cfg.config_hash(),
    })


@app.route('/api/status')
def get_status():
    """Get current suite status"""
    with suite_lock:
        return jsonify({'success': True, **suite_state})


if __name__ == '__main__':
    setup_logging()
    logger.info("serving on %s:%d", config.FLASK_HOST, config.FLASK_PORT)
    app.run(host=config.FLASK_HOST, port=config.FLASK_PORT, debug=config.FLASK_DEBUG)
