#ifndef BFOCK_BFOCK_HPP
#define BFOCK_BFOCK_HPP

#include <bfock/bipoly.hpp>
#include <bfock/edge_cases.hpp>
#include <bfock/errors.hpp>
#include <bfock/fock_core.hpp>
#include <bfock/json_io.hpp>
#include <bfock/linalg_exact.hpp>
#include <bfock/moments.hpp>
#include <bfock/norm.hpp>
#include <bfock/partitions_b.hpp>
#include <bfock/polynomials_measures.hpp>
#include <bfock/rational.hpp>
#include <bfock/scalar.hpp>
#include <bfock/signed_permutations.hpp>

#endif
