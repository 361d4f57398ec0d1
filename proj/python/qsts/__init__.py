# Copyright 2026 The QSTS Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Quantum state sharing simulator.

Structured results come back as plain dicts with the same layout as the
CLI's JSON payloads.
"""

import json as _json

from . import _core
from ._core import __version__, bell_state, correction_for, haar_secret, table_csv

__all__ = [
    "__version__",
    "audit_expansion",
    "bell_state",
    "check_golden",
    "correction_for",
    "derive_table",
    "haar_secret",
    "monte_carlo",
    "run_forced",
    "run_protocol",
    "security_check",
    "table_csv",
]


def run_protocol(secret, scheme="four-epr", agents=2, receiver="charlie", seed=0):
    return _json.loads(_core.run_protocol(list(secret), scheme, agents, receiver, seed))


def run_forced(secret, outcomes, scheme="four-epr", agents=2, receiver="charlie"):
    return _json.loads(_core.run_forced(list(secret), list(outcomes), scheme, agents, receiver))


def derive_table(scheme="four-epr", agents=2, receiver="charlie"):
    return _json.loads(_core.derive_table(scheme, agents, receiver))


def check_golden():
    return _json.loads(_core.check_golden())


def audit_expansion():
    return _json.loads(_core.audit_expansion())


def security_check(seed):
    return _json.loads(_core.security_check(seed))


def monte_carlo(scheme="four-epr", agents=2, receiver="charlie", trials=1000, seed=0):
    return _json.loads(_core.monte_carlo(scheme, agents, receiver, trials, seed))
