#include "sbench/scenes/reference_specs.hpp"

#include "sbench/slcs/parser.hpp"
#include "sbench/slcs/sort_check.hpp"

namespace sbench::scenes {

namespace {

slcs::SpecProgram compile(std::string_view text) {
  slcs::SpecProgram p = slcs::parse_source(text);
  slcs::sort_check(p);
  return p;
}

}  // namespace

const slcs::SpecProgram& dots_program() {
  static const slcs::SpecProgram p = compile(kDotsSpec);
  return p;
}

const slcs::SpecProgram& maze_shortest_program() {
  static const slcs::SpecProgram p = compile(kMazeShortestSpec);
  return p;
}

const slcs::SpecProgram& maze_corridor_program() {
  static const slcs::SpecProgram p = compile(kMazeCorridorSpec);
  return p;
}

}  // namespace sbench::scenes
