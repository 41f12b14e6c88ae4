// QST text format v1.
//   line 1: "pure" or "mixed"
//   line 2: local dimensions
//   pure entries:  i1 ... in re im
//   mixed entries: r1 ... rn c1 ... cn re im
// Omitted entries are zero; '#' starts a comment line.
#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "gme/qstate.hpp"

namespace gme {

using QstState = std::variant<PureState, DensityMatrix>;

// Throws format_error on malformed text or normalization off by more than 1e-8.
QstState parse_qst(std::istream& in);
QstState load_qst(const std::string& path);
void write_qst(std::ostream& out, const PureState& psi);
void write_qst(std::ostream& out, const DensityMatrix& rho);

// Pure states are promoted to projectors.
DensityMatrix as_density(const QstState& s);

}  // namespace gme
