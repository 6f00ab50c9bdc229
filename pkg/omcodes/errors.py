# coding=utf-8
# Copyright 2024 The omcodes Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Exceptions raised by omcodes."""

from typing import Any, Optional


class OMCodesError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(OMCodesError, ValueError):
    """Sign vectors or maps of mismatched length."""


class ArgumentError(OMCodesError, ValueError):
    """An operation was called outside of its precondition."""


class CapacityError(OMCodesError, ValueError):
    """An input exceeds an enumeration bound."""


class UnknownInstanceError(OMCodesError, KeyError):
    """No catalog instance with the requested name."""


class InconsistencyError(OMCodesError, RuntimeError):
    """An internal contract failed.

    Args:
        message (`str`):
            Human readable description of the failed contract.
        report (`ValidationReport`, *optional*):
            The axiom report that triggered the failure, if any.
    """

    def __init__(self, message: str, report: Optional[Any] = None):
        super().__init__(message)
        self.report = report
