#include "siegelkit/formats.hpp"

#include "siegelkit/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#ifndef SIEGELKIT_BUILD_DATA_DIR
#define SIEGELKIT_BUILD_DATA_DIR ""
#endif
#ifndef SIEGELKIT_INSTALL_DATA_DIR
#define SIEGELKIT_INSTALL_DATA_DIR ""
#endif

namespace fs = std::filesystem;

namespace siegelkit {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

// Non-empty, non-comment lines with their line numbers.
struct Reader {
    std::vector<std::pair<int, std::string>> lines;
    std::size_t pos = 0;
    std::string origin;

    Reader(std::istream& in, std::string o) : origin(std::move(o)) {
        std::string line;
        int no = 0;
        while (std::getline(in, line)) {
            ++no;
            line = trim(line);
            if (line.empty() || line[0] == '#') continue;
            lines.emplace_back(no, line);
        }
    }
    bool done() const { return pos >= lines.size(); }
    [[noreturn]] void fail(const std::string& msg) const {
        const int no = pos < lines.size() ? lines[pos].first : (lines.empty() ? 0 : lines.back().first);
        throw DomainError(origin + ":" + std::to_string(no) + ": " + msg);
    }
    const std::string& next() {
        if (done()) fail("unexpected end of file");
        return lines[pos++].second;
    }
    void expect_tag(const std::string& kind) {
        std::istringstream is(next());
        std::string tag;
        int version = 0;
        is >> tag >> version;
        --pos;
        if (tag != "siegelkit-" + kind) fail("expected a siegelkit-" + kind + " file");
        if (version != 1) fail("unsupported format version");
        ++pos;
    }
    // "key value" line; the value is the rest of the line.
    std::string keyed(const std::string& key) {
        const std::string& l = next();
        if (l.rfind(key, 0) != 0 || (l.size() > key.size() && !std::isspace(static_cast<unsigned char>(l[key.size()])))) {
            --pos;
            fail("expected '" + key + "'");
        }
        return trim(l.substr(key.size()));
    }
};

std::ifstream open(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open " + path.string());
    return in;
}

long to_long(const std::string& s, const Reader& r) {
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (s.empty() || *end != '\0') r.fail("bad integer '" + s + "'");
    return v;
}

std::string read_tag(const fs::path& path) {
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (!line.empty() && line[0] != '#') return line.substr(0, line.find(' '));
    }
    return {};
}

std::optional<fs::path> bundled(const std::string& sub, const std::string& key, const std::string& ext) {
    const fs::path dir = data_dir() / sub;
    for (const auto& k : {key, lower(key)}) {
        const fs::path p = dir / (k + ext);
        if (fs::exists(p)) return p;
    }
    return std::nullopt;
}

}  // namespace

EvenLattice read_lattice(std::istream& in, const std::string& origin) {
    Reader r(in, origin);
    r.expect_tag("lattice");
    const std::string name = r.keyed("name");
    const long n = to_long(r.keyed("rank"), r);
    if (n <= 0 || n > 64) r.fail("rank must be between 1 and 64");
    if (r.next() != "gram") {
        --r.pos;
        r.fail("expected 'gram'");
    }
    IntMatrix g(static_cast<int>(n), static_cast<int>(n));
    for (int i = 0; i < n; ++i) {
        std::istringstream row(r.next());
        std::string tok;
        int j = 0;
        while (row >> tok) {
            if (j >= n) r.fail("too many entries in a Gram row");
            g(i, j++) = to_long(tok, r);
        }
        if (j != n) r.fail("too few entries in a Gram row");
    }
    if (!r.done()) r.fail("trailing content after the Gram matrix");
    try {
        return EvenLattice(name, g);
    } catch (const DomainError& e) {
        throw DomainError(origin + ": " + e.what());
    }
}

EvenLattice read_lattice_file(const fs::path& path) {
    auto in = open(path);
    return read_lattice(in, path.string());
}

void write_lattice(std::ostream& out, const EvenLattice& L, const std::string& note) {
    out << "siegelkit-lattice 1\n";
    if (!note.empty()) out << "# " << note << "\n";
    out << "name " << L.name() << "\nrank " << L.rank() << "\ngram\n";
    std::size_t width = 1;
    for (int i = 0; i < L.rank(); ++i)
        for (int j = 0; j < L.rank(); ++j) width = std::max(width, std::to_string(L.gram()(i, j)).size());
    for (int i = 0; i < L.rank(); ++i) {
        for (int j = 0; j < L.rank(); ++j) {
            const std::string v = std::to_string(L.gram()(i, j));
            if (j) out << ' ';
            out << std::string(width - v.size(), ' ') << v;
        }
        out << "\n";
    }
}

GenusFile read_genus_file(const fs::path& path) {
    auto in = open(path);
    Reader r(in, path.string());
    r.expect_tag("genus");
    GenusFile g;
    g.name = r.keyed("name");
    while (!r.done()) {
        std::istringstream is(r.keyed("lattice"));
        std::string ref, kw, order;
        is >> ref >> kw >> order;
        g.refs.push_back(ref);
        if (kw.empty()) {
            g.aut_orders.emplace_back();
        } else {
            BigInt v;
            if (kw != "aut" || v.set_str(order, 10) != 0 || v <= 0) r.fail("expected 'aut <positive integer>'");
            g.aut_orders.emplace_back(v);
        }
    }
    if (g.refs.empty()) r.fail("genus has no lattices");
    return g;
}

EigenformFile read_eigenform_file(const fs::path& path) {
    auto in = open(path);
    Reader r(in, path.string());
    r.expect_tag("eigenform");
    EigenformFile e;
    e.name = r.keyed("name");
    e.weight = static_cast<int>(to_long(r.keyed("weight"), r));
    if (e.weight <= 0 || e.weight % 2) r.fail("weight must be a positive even integer");
    while (!r.done()) {
        std::istringstream is(r.next());
        std::string ps, as;
        is >> ps >> as;
        BigInt a;
        const long p = to_long(ps, r);
        if (!is_prime(p)) r.fail(ps + " is not prime");
        if (a.set_str(as, 10) != 0) r.fail("bad eigenvalue '" + as + "'");
        if (!e.a_p.emplace(p, a).second) r.fail("duplicate prime " + ps);
    }
    return e;
}

PlusFormFile read_plusform_file(const fs::path& path) {
    auto in = open(path);
    Reader r(in, path.string());
    r.expect_tag("plusform");
    PlusFormFile f;
    f.name = r.keyed("name");
    f.weight_numerator = static_cast<int>(to_long(r.keyed("weight-numerator"), r));
    if (f.weight_numerator <= 0 || f.weight_numerator % 2 == 0) r.fail("weight numerator must be odd and positive");
    while (!r.done()) {
        std::istringstream is(r.next());
        std::string es, cs;
        is >> es >> cs;
        Rational c;
        const long eta = to_long(es, r);
        if (c.set_str(cs, 10) != 0) r.fail("bad coefficient '" + cs + "'");
        c.canonicalize();
        if (!f.C.emplace(eta, c).second) r.fail("duplicate index " + es);
    }
    return f;
}

fs::path data_dir() {
    if (const char* env = std::getenv("SIEGELKIT_DATA_DIR"); env && *env) return env;
    const fs::path build(SIEGELKIT_BUILD_DATA_DIR);
    if (!build.empty() && fs::is_directory(build / "lattices")) return build;
    const fs::path install(SIEGELKIT_INSTALL_DATA_DIR);
    if (!install.empty() && fs::is_directory(install / "lattices")) return install;
    throw DomainError("no bundled data directory found; set SIEGELKIT_DATA_DIR");
}

EvenLattice resolve_lattice(const std::string& ref) {
    if (fs::is_regular_file(ref)) return read_lattice_file(ref);
    if (auto p = bundled("lattices", ref, ".lattice")) return read_lattice_file(*p);
    const fs::path dir = data_dir() / "lattices";
    if (fs::is_directory(dir)) {
        std::vector<fs::path> files;
        for (const auto& e : fs::directory_iterator(dir))
            if (e.path().extension() == ".lattice") files.push_back(e.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
            std::ifstream in(f);
            std::string line;
            while (std::getline(in, line)) {
                line = trim(line);
                if (line.rfind("name ", 0) == 0) {
                    if (trim(line.substr(5)) == ref) return read_lattice_file(f);
                    break;
                }
            }
        }
    }
    throw DomainError("unknown lattice '" + ref + "'");
}

GenusWithWeights load_genus(const std::string& ref, const EnumerationOptions& opts) {
    fs::path path = ref;
    if (!fs::is_regular_file(path)) {
        auto p = bundled("genus", ref, ".genus");
        if (!p) throw DomainError("unknown genus '" + ref + "'");
        path = *p;
    }
    const GenusFile g = read_genus_file(path);
    std::vector<EvenLattice> lattices;
    std::vector<BigInt> orders;
    for (std::size_t i = 0; i < g.refs.size(); ++i) {
        // Relative paths inside a genus file are relative to the file.
        const fs::path rel = path.parent_path() / g.refs[i];
        lattices.push_back(fs::is_regular_file(rel) ? read_lattice_file(rel) : resolve_lattice(g.refs[i]));
        orders.push_back(g.aut_orders[i] ? *g.aut_orders[i] : automorphism_order(lattices.back(), opts));
    }
    return GenusWithWeights(std::move(lattices), std::move(orders));
}

fs::path resolve_form_file(const std::string& ref, const std::string& extension) {
    if (fs::is_regular_file(ref)) return ref;
    if (auto p = bundled("forms", ref, extension)) return *p;
    throw DomainError("unknown form file '" + ref + "'");
}

HalfIntegralForm parse_xi(const std::string& text) {
    if (text.rfind("gram:", 0) == 0) return resolve_lattice(text.substr(5)).as_form();
    if (fs::is_regular_file(text)) {
        if (read_tag(text) == "siegelkit-lattice") return read_lattice_file(text).as_form();
        auto in = open(text);
        std::string line, rows;
        while (std::getline(in, line)) {
            line = trim(line);
            if (line.empty() || line[0] == '#') continue;
            std::replace(line.begin(), line.end(), '\t', ' ');
            std::istringstream is(line);
            std::string tok, row;
            while (is >> tok) row += (row.empty() ? "" : ",") + tok;
            rows += (rows.empty() ? "" : ";") + row;
        }
        return parse_inline_form(rows);
    }
    std::string compact;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
    return parse_inline_form(compact);
}

ClassFunction parse_class_function(const std::string& text, const GenusWithWeights& genus) {
    auto value = [](const std::string& s) {
        Rational v;
        if (v.set_str(trim(s), 10) != 0) throw DomainError("class function: bad value '" + s + "'");
        v.canonicalize();
        return v;
    };
    if (text.rfind("const:", 0) == 0) return constant_class_function(genus, value(text.substr(6)));
    ClassFunction f;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw DomainError("class function: expected name=value, got '" + item + "'");
        const std::string name = trim(item.substr(0, eq));
        genus.index_of(name);
        f[name] = value(item.substr(eq + 1));
    }
    return f;
}

}  // namespace siegelkit
