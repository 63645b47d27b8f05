#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "relq/extension.hpp"
#include "relq/finmonad.hpp"
#include "relq/quantale.hpp"
#include "relq/vrel.hpp"

namespace relq {

// Quantale spec files are line oriented: `#` starts a comment, blank
// lines are ignored, tokens are separated by whitespace. Stanzas:
//   elements <label>...      carrier, in table order (required, once)
//   unit <label>             (required, once)
//   leq <a> <b>              one pair a <= b per line; a <= a is implied
//   tensor <a> <b> <c>       a (x) b = c; every pair must be covered
// Malformed input raises UsageError naming the offending line.
QuantaleSpec parse_quantale_text(const std::string& text);
QuantaleSpec parse_quantale_file(const std::string& path);

// Normalized echo of a validated quantale: full reflexive leq listing
// and the complete tensor table, row major.
std::string quantale_text(const QPtr& Q);

// Relation spec files, same lexical rules. Stanzas:
//   source <label>...        (required, once)
//   target <label>...        (required, once)
//   entry <x> <y> <v>        omitted pairs hold the bottom of V
// `entries` is accepted as a synonym for `entry`.
VRel parse_relation_text(const std::string& text, const QPtr& V);
VRel parse_relation_file(const std::string& path, const QPtr& V);

// Entries sorted row major, bottom entries omitted.
std::string relation_text(const VRel& r);

// Law-breaking fixtures for exercising the reporting path. Each
// returns a copy of its argument with one deliberate defect:
//   swap-residuals   residual tables interchanged; refuses commutative
//                    quantales, where the swap would be invisible
//   corrupt-mult     one image of the flattening rerouted on two
//                    point base sets
//   scramble-tau     two non-diagonal images of the comparison swapped
//                    on four element component carriers
//   transpose        square extension outputs transposed in place
//   drop-unit        extensions of identity relations replaced by the
//                    identity, collapsing the unit of the convolution
QPtr mutate_swap_residuals(const QPtr& Q);
FinMonad mutate_corrupt_mult(const FinMonad& T);
MonadMorphism mutate_scramble_tau(const MonadMorphism& tau);
LaxExtension mutate_transpose(const LaxExtension& E);
LaxExtension mutate_drop_unit(const LaxExtension& E);

// One resolved invocation of the command line tool. group/action name
// the command (`laws quantale`, `compute compose`, ...); the remaining
// fields mirror the flags and keep their spelled-out defaults.
struct RunConfig {
  std::string group;
  std::string action;
  std::vector<std::string> inputs;  // positional relation spec files

  std::string name;        // laws quantale --name
  std::string file;        // laws quantale --file
  std::string quantale;    // builtin name or spec file path
  std::string monad;
  std::string tau;         // empty means the catalog default
  std::string extension;   // identity | barr | kleisli
  std::string target;      // change-of-base target quantale
  std::string mutate;
  std::string map_labels;  // check vfunctor: image labels, comma separated
  std::string sizes;       // comma separated base set sizes
  int set_size = -1;       // enumerate presheaf
  int size = -1;           // crosscheck top-preorder
  std::uint64_t seed = 17;
  std::uint64_t cap = 1ull << 20;
  int samples = 1000;
  bool timings = false;
  std::string out;  // machine records (or the computed relation) also go here
};

// Executes one configuration. Reports go to `out` as tab separated
// machine records (suite, law, status, witness, duration) followed by
// a human summary; failures repeat their witness in full. Returns the
// process exit status: 0 every check passed, 1 at least one law
// failed, 2 unusable configuration or malformed input, 3 an
// enumeration would exceed the cap.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Flag parsing around run(). Flags may also be supplied through
// RELQ_-prefixed environment variables; explicit flags win.
int cli_main(int argc, const char* const* argv);

}  // namespace relq
