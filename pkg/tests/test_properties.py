"""Soundness, translation and agreement properties over generated terms."""

from hypothesis import given, settings, strategies as st

from sequent_ir.generator import LIBRARY, gen_type, gen_typed_term
from sequent_ir.properties import (
    check_agreement, check_core_soundness, check_fun_soundness, check_translation_typing,
    compile_closed,
)
from sequent_ir.types import Int

seeds = st.integers(0, 2**32 - 1)
depths = st.integers(0, 4)


@settings(max_examples=150)
@given(seeds, depths)
def test_fun_progress_and_preservation(seed, depth):
    check_fun_soundness(LIBRARY, gen_typed_term(seed, ty=gen_type(seed), depth=depth))


@settings(max_examples=150)
@given(seeds, depths)
def test_translation_preserves_types(seed, depth):
    ty = gen_type(seed)
    check_translation_typing(LIBRARY, gen_typed_term(seed, ty=ty, depth=depth), ty)


@settings(max_examples=150)
@given(seeds, depths)
def test_core_progress_and_preservation(seed, depth):
    ty = gen_type(seed)
    c = compile_closed(LIBRARY, gen_typed_term(seed, ty=ty, depth=depth))
    check_core_soundness(c.program, c.producer, ty)


@settings(max_examples=150)
@given(seeds, depths)
def test_simplified_core_soundness(seed, depth):
    ty = gen_type(seed)
    c = compile_closed(LIBRARY, gen_typed_term(seed, ty=ty, depth=depth), simplified=True)
    check_core_soundness(c.program, c.producer, ty)


@settings(max_examples=150)
@given(seeds, depths)
def test_fun_and_core_agree_on_integers(seed, depth):
    check_agreement(LIBRARY, gen_typed_term(seed, ty=Int, depth=depth))
