# Copyright 2026 The authq Authors
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

"""Authorized quantum computation toy lab: keyed gate arrays, shuffling, attacks."""

from ._authq import (
    ArgumentError,
    AuthenticityError,
    BudgetError,
    Error,
    GateSequence,
    KeySecrets,
    ParseError,
    WidthError,
    build_pga,
    check_identity,
    controlize,
    estimate_overlap,
    parse,
    publish,
    recycle,
    run,
    shuffle,
    user_execute,
)

__all__ = [
    "ArgumentError",
    "AuthenticityError",
    "BudgetError",
    "Error",
    "GateSequence",
    "KeySecrets",
    "ParseError",
    "WidthError",
    "build_pga",
    "check_identity",
    "controlize",
    "estimate_overlap",
    "parse",
    "publish",
    "recycle",
    "run",
    "shuffle",
    "user_execute",
]
