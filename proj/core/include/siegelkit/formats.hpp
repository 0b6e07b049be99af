#pragma once

#include "siegelkit/lattice.hpp"
#include "siegelkit/lift.hpp"
#include "siegelkit/quadform.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace siegelkit {

// Text formats. Every file starts with a "siegelkit-<kind> 1" tag line;
// '#' starts a comment line.
//
//   siegelkit-lattice 1        siegelkit-genus 1       siegelkit-eigenform 1   siegelkit-plusform 1
//   name E8                    name e8                 name Delta              name h13
//   rank 8                     lattice e8 [aut N]      weight 12               weight-numerator 13
//   gram                                               2 -24                   1 1
//   <rank rows of integers>                            3 252                   4 -56

EvenLattice read_lattice(std::istream& in, const std::string& origin = "<stream>");
EvenLattice read_lattice_file(const std::filesystem::path& path);
void write_lattice(std::ostream& out, const EvenLattice& L, const std::string& note = "");

struct GenusFile {
    std::string name;
    std::vector<std::string> refs;
    std::vector<std::optional<BigInt>> aut_orders;  // supplied with "aut N", else computed
};
GenusFile read_genus_file(const std::filesystem::path& path);

struct EigenformFile {
    std::string name;
    int weight = 0;
    std::map<long, BigInt> a_p;
    SatakeData satake() const { return SatakeData::from_hecke_eigenvalues(weight, a_p); }
};
EigenformFile read_eigenform_file(const std::filesystem::path& path);

struct PlusFormFile {
    std::string name;
    int weight_numerator = 0;
    std::map<long, Rational> C;
    PlusFormCoefficients coefficients() const { return PlusFormCoefficients((weight_numerator - 1) / 2, C); }
};
PlusFormFile read_plusform_file(const std::filesystem::path& path);

// Bundled data: $SIEGELKIT_DATA_DIR, then the source tree, then the install prefix.
std::filesystem::path data_dir();

// A path, a bundled lattice key ("e8"), or the name field of a bundled
// lattice ("E8+E8").
EvenLattice resolve_lattice(const std::string& ref);
// A path or a bundled genus key. Automorphism orders not present in the
// file are computed by enumeration.
GenusWithWeights load_genus(const std::string& ref, const EnumerationOptions& opts = {});
// Files under data/forms.
std::filesystem::path resolve_form_file(const std::string& ref, const std::string& extension);

// "gram:<lattice>" for Gram(L)/2, a path to a lattice file or to rows of
// xi entries, or inline rows "1,1/2;1/2,1".
HalfIntegralForm parse_xi(const std::string& text);
// "name=value,name=value" or "const:<value>" (needs the genus).
ClassFunction parse_class_function(const std::string& text, const GenusWithWeights& genus);

}  // namespace siegelkit
