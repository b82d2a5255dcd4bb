#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sealcheck/bit_matrix.hpp"
#include "sealcheck/model.hpp"
#include "sealcheck/program_graph.hpp"

namespace sealcheck::testing {

// Programs used across the suites.
Program mt(int n, int src, int dst);
Program x_program(int n = 2);
Program x_bystander_seal();
// The phase L: every process i != 1 messages every k not in {1, i}, receives
// those messages, then reports to process 1, which collects the reports.
Program l_program(int n);
// Process 1 messages every other process once.
Program l_seal(int n);

std::string fixture_path(const std::string& name);

// Every balanced, deadlock-free program over n processes with at most
// `max_statements` statements in total.
std::vector<Program> enumerate_programs(int n, std::size_t max_statements);

// The criterion set: n in {1,2,3}, at most four communication events.
std::vector<Program> small_programs();

// Random balanced program: `messages` transmissions on random channels with
// send/receive positions drawn uniformly inside each process sequence.
Program random_balanced(std::mt19937_64& rng, int n, std::size_t messages);

// Rejection-samples a balanced deadlock-free program with n processes and at
// most `max_events` statements.
Program random_bsl(std::mt19937_64& rng, int n, std::size_t max_events);

// Reachability by depth-first search from every node; independent of
// BitMatrix::close_transitively.
BitMatrix reference_closure(std::size_t node_count,
                            const std::vector<std::pair<std::size_t, std::size_t>>& edges);

}  // namespace sealcheck::testing
