#pragma once

#include <string_view>

#include "sbench/slcs/ast.hpp"

namespace sbench::scenes {

// Texts of the shipped specs (specs/*.sls); a unit test keeps the two in sync.

inline constexpr std::string_view kDotsSpec =
    "# Dots within distance D (pixel units) of the reference region.\n"
    "let dots = channel(0)\n"
    "let ref = channel(1)\n"
    "save \"label\" touch(dots, dt(ref) <= D)\n";

inline constexpr std::string_view kMazeShortestSpec =
    "# Union of all minimum-step entry-to-exit paths through free space.\n"
    "let fs = !channel(0)\n"
    "let total = gdt(fs, channel(1)) + gdt(fs, channel(2))\n"
    "save \"label\" total <= minval(total) + tol\n";

inline constexpr std::string_view kMazeCorridorSpec =
    "# Free space connected to both the entry and the exit.\n"
    "let fs = !channel(0)\n"
    "save \"label\" touch(fs, channel(1)) & touch(fs, channel(2))\n";

/// Parsed and sort-checked programs, built once per process.
const slcs::SpecProgram& dots_program();
const slcs::SpecProgram& maze_shortest_program();
const slcs::SpecProgram& maze_corridor_program();

}  // namespace sbench::scenes
