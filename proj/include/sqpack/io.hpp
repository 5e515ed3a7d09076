#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqpack/packing.hpp"
#include "sqpack/verifier.hpp"

namespace sqpack {

/// A packing file does not follow the expected layout; `path` names the
/// offending element (for example "/stacks/3/corner").
class SchemaError : public std::runtime_error {
public:
    SchemaError(const std::string& path, const std::string& what)
        : std::runtime_error(path + ": " + what), path_(path) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

std::string packing_to_json(const Packing& p, const WasteReport* report = nullptr);
Packing packing_from_json(const std::string& text);

std::string report_to_json(const WasteReport& r);

struct SweepRow {
    double x = 0.0;
    double h = 0.0;
    double theta = 0.0;
    int m = 0;
    int strips = 0;  ///< fewest strips over the trapezoids
    double waste = 0.0;
    long long violations = 0;
    double waste_naive = 0.0;
    int fallback_events = 0;
    bool ok = true;
    std::string error;
};

/// Rows sorted by x. Failed rows carry an empty W and their error text.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

/// SVG of the packing: implied grid as a pattern, every stack square as a
/// rotated rect, ledger polygons shaded, skipped gaps outlined.
std::string packing_to_svg(const Packing& p);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace sqpack
