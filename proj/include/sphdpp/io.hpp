#ifndef SPHDPP_IO_HPP
#define SPHDPP_IO_HPP

#include <iosfwd>
#include <string>

#include "sphdpp/sampling.hpp"

namespace sphdpp {

/// Point-set CSV: '#'-prefixed JSON metadata line, then one point per row
/// with d+1 float64 columns printed with round-trip precision.
void write_points_csv(std::ostream& os, const PointConfiguration& x, const std::string& metadata_json);

struct LoadedPoints {
    PointConfiguration points;
    std::string metadata_json; // empty when the file carries none
};

LoadedPoints read_points_csv(std::istream& is);

/// Round-trip decimal formatting ("%.17g") used by every CSV emitter, so
/// identical inputs give byte-identical files.
std::string format_double(double v);

} // namespace sphdpp

#endif
