# SPDX-License-Identifier: Apache-2.0
# Copyright (C) 2026 The hris-sim Authors

"""Link-level simulator for hybrid reflecting and sensing metasurfaces."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
