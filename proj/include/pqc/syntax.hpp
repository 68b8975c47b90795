#pragma once

#include "pqc/ast.hpp"
#include "pqc/gate_spec.hpp"

#include <string>
#include <string_view>

namespace pqc {

/// Concrete syntax:
///
///   program ::= header* term
///   header  ::= inputs #n : W, ... ;  |  gates "path" ;
///   term    ::= let x = term in term | let (x, y, ...) = term in term
///             | ifz V then term else term | force V | box[T] V
///             | apply(V, W) | return V | V W | ( term )
///   value   ::= x | #n | * | n | @gate | \x:A. term | lift term
///             | (V, W, ...) | ( value )
///   type    ::= 1 | I | Nat | Qubit | Bit | A * B | A -o B | A -o[T] B
///             | A -o[T; n] B | !A | ![n]A | Circ(T, U) | Circ[n](T, U)
///
/// "--" starts a comment. λ, ⊗ and ⊸ are accepted for \, * and -o.
ast::Program parse_program(std::string_view text);
ast::TermPtr parse_term(std::string_view text);
ast::ValuePtr parse_value(std::string_view text);
ast::TypePtr parse_type(std::string_view text);

/// Rewrites surface forms: tuples become right-nested pairs, tuple patterns
/// become nested destructors and @name becomes the gate's boxed literal.
ast::TermPtr desugar(const ast::TermPtr& m, const GateSpec& spec);
ast::ValuePtr desugar(const ast::ValuePtr& v, const GateSpec& spec);

/// Prints terms so that parse followed by desugar gives an alpha-equal
/// term. Boxed circuits not originating from a gate literal print as
/// "<circuit ...>", which does not parse.
std::string print(const ast::Term& m);
std::string print(const ast::Value& v);
std::string print(const ast::Type& t);
std::string print(const ast::Program& p);

} // namespace pqc
