"""
DeLaM Kernel Package

Type checker, conversion checker and reduction engine for a layered type
theory of code and meta-programs: a static code layer, a computing layer
and a meta layer, with universe polymorphism, contextual types and
recursors over boxed code.
"""

# Core syntax
from .layers import Layer, typeof_layer, comp
from .ulevel import LVar, LZero, LSucc, LLub, Omega, ZERO, OMEGA, UnivSubst, normalize, level_equiv
from .syntax import LocalCtx, LocalSubst, GlobalSubst, Decl, CtxBind, TypBind, TrmBind, BranchKind
from .scope import Scope

# Kernel judgements
from .subst import shift, lsubst_apply, gsubst_apply, usubst_apply_syntax
from .reduce import Fuel, step_term, whnf_term, whnf_type, reduction_trace
from .convert import Converter, alpha_equiv_term, alpha_equiv_type, is_convertible_term, is_convertible_type
from .checker import TypeChecker, is_well_typed, lift_ok

# Surface language and driver
from .parser import SourceFile, parse, parse_file, parse_level, parse_term, parse_type
from .printer import show, show_level
from .driver import CheckReport, check_file, check_text, conv_definitions, level_norm, whnf_definition
from .lawbench import run_laws, suite_names, SuiteReport

# Ambient
from .errors import (
    DelamError, LevelError, SubstError, ScopeError, NoBranch, FuelExhausted, ConfigError,
    Diagnostic, KernelTypeError, ConversionError, ParseError,
)
from .config import KernelConfig, ConfigLoader, load_config, get_available_profiles
from .log import configure_logging

__version__ = "0.1.0"

__all__ = [
    # Syntax
    'Layer', 'typeof_layer', 'comp',
    'LVar', 'LZero', 'LSucc', 'LLub', 'Omega', 'ZERO', 'OMEGA', 'UnivSubst', 'normalize', 'level_equiv',
    'LocalCtx', 'LocalSubst', 'GlobalSubst', 'Decl', 'CtxBind', 'TypBind', 'TrmBind', 'BranchKind',
    'Scope',

    # Kernel
    'shift', 'lsubst_apply', 'gsubst_apply', 'usubst_apply_syntax',
    'Fuel', 'step_term', 'whnf_term', 'whnf_type', 'reduction_trace',
    'Converter', 'alpha_equiv_term', 'alpha_equiv_type', 'is_convertible_term', 'is_convertible_type',
    'TypeChecker', 'is_well_typed', 'lift_ok',

    # Surface and driver
    'SourceFile', 'parse', 'parse_file', 'parse_level', 'parse_term', 'parse_type',
    'show', 'show_level',
    'CheckReport', 'check_file', 'check_text', 'conv_definitions', 'level_norm', 'whnf_definition',
    'run_laws', 'suite_names', 'SuiteReport',

    # Errors, configuration and logging
    'DelamError', 'LevelError', 'SubstError', 'ScopeError', 'NoBranch', 'FuelExhausted', 'ConfigError',
    'Diagnostic', 'KernelTypeError', 'ConversionError', 'ParseError',
    'KernelConfig', 'ConfigLoader', 'load_config', 'get_available_profiles',
    'configure_logging',
]
