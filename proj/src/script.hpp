#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "monomial.hpp"

namespace tcw {

struct ScriptSpan {
  size_t line = 1;
  size_t col = 1;
};

// Integer-coefficient polynomial over the owning ring's variables, kept
// exact so both prime and integral rings can consume it.
struct PolySpec {
  std::vector<std::pair<int64_t, Monomial>> terms;
  std::string source;
};

struct RingDecl {
  std::string name;
  bool integral = false;  // "char Z": a family over the integers
  uint32_t prime = 0;
  std::vector<std::string> vars;
  std::vector<int64_t> weights;  // empty means all ones
  std::vector<PolySpec> relations;
  bool domain = false;
  ScriptSpan span;
};

struct IdealDecl {
  std::string name;
  std::string ring;  // the ring active at declaration time
  std::vector<PolySpec> gens;
  ScriptSpan span;
};

struct ElementDecl {
  std::string name;
  std::string ring;
  PolySpec poly;
  ScriptSpan span;
};

// Task arguments stay as words (names, integers, comma-joined lists); the
// runner owns the per-task grammar.
struct TaskDecl {
  std::string kind;
  std::vector<std::string> words;
  ScriptSpan span;
};

enum class DeclKind { Ring, Ideal, Element, Task };

struct WorkbenchScript {
  std::vector<RingDecl> rings;
  std::vector<IdealDecl> ideals;
  std::vector<ElementDecl> elements;
  std::vector<TaskDecl> tasks;
  std::vector<std::pair<DeclKind, size_t>> order;
};

WorkbenchScript parse_script(const std::string& text);

// Canonical text form; parsing it back yields the same declarations.
std::string render_script(const WorkbenchScript& script);

std::string render_poly_spec(const PolySpec& poly, const std::vector<std::string>& vars);

}  // namespace tcw
