#include "siegelkit/errors.hpp"
#include "siegelkit/formats.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace siegelkit;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name, const std::string& content) {
    const fs::path dir = fs::temp_directory_path() / "siegelkit_test_formats";
    fs::create_directories(dir);
    const fs::path p = dir / name;
    std::ofstream(p) << content;
    return p;
}

EvenLattice parse(const std::string& text) {
    std::istringstream in(text);
    return read_lattice(in, "inline");
}

}  // namespace

TEST(LatticeFormat, RoundTrip) {
    for (const std::string key : {"a2", "d4", "e8", "d16plus", "leech"}) {
        const EvenLattice L = resolve_lattice(key);
        std::ostringstream out;
        write_lattice(out, L, "round trip");
        const EvenLattice back = parse(out.str());
        EXPECT_EQ(back.name(), L.name());
        EXPECT_EQ(back.gram(), L.gram());
    }
}

TEST(LatticeFormat, Errors) {
    EXPECT_THROW(parse(""), DomainError);
    EXPECT_THROW(parse("siegelkit-genus 1\n"), DomainError);
    EXPECT_THROW(parse("siegelkit-lattice 1\nname X\nrank 2\ngram\n2 -1\n"), DomainError);
    EXPECT_THROW(parse("siegelkit-lattice 1\nname X\nrank 2\ngram\n2 -1\n-1 x\n"), DomainError);
    EXPECT_THROW(parse("siegelkit-lattice 1\nname X\nrank 2\ngram\n1 0\n0 1\n"), DomainError);
    EXPECT_THROW(parse("siegelkit-lattice 1\nname X\nrank 0\ngram\n"), DomainError);
    try {
        parse("siegelkit-lattice 1\nname X\nrank 2\ngram\n2 -1 4\n-1 2\n");
        FAIL() << "expected DomainError";
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("inline:"), std::string::npos) << e.what();
    }
    const EvenLattice ok = parse("siegelkit-lattice 1\n# comment\nname A2\nrank 2\ngram\n2 -1\n-1 2\n");
    EXPECT_EQ(ok.det(), 3);
}

TEST(LatticeResolution, KeysNamesAndPaths) {
    EXPECT_EQ(resolve_lattice("e8").name(), "E8");
    EXPECT_EQ(resolve_lattice("E8").rank(), 8);
    EXPECT_EQ(resolve_lattice("E8+E8").rank(), 16);
    EXPECT_EQ(resolve_lattice((data_dir() / "lattices" / "a2.lattice").string()).det(), 3);
    EXPECT_THROW(resolve_lattice("no_such_lattice"), DomainError);
}

TEST(GenusFormat, BundledGenera) {
    const GenusFile f = read_genus_file(data_dir() / "genus" / "rank16.genus");
    EXPECT_EQ(f.refs, (std::vector<std::string>{"e8e8", "d16plus"}));
    const GenusWithWeights g = load_genus("rank16");
    EXPECT_EQ(g.lattices().size(), 2u);
    EXPECT_EQ(g.aut_orders()[1], BigInt("685597979049984000"));
    const GenusFile n = read_genus_file(data_dir() / "genus" / "niemeier.genus");
    EXPECT_EQ(n.refs.size(), 24u);
}

TEST(GenusFormat, SuppliedAutomorphismOrders) {
    const fs::path p = scratch("tiny.genus", "siegelkit-genus 1\nname tiny\nlattice e8 aut 696729600\n");
    const GenusFile f = read_genus_file(p);
    ASSERT_EQ(f.aut_orders.size(), 1u);
    EXPECT_EQ(*f.aut_orders[0], BigInt("696729600"));
    const GenusWithWeights g = load_genus(p.string());
    EXPECT_EQ(g.mass(), Rational(1, 696729600));
    EXPECT_THROW(read_genus_file(scratch("bad.genus", "siegelkit-genus 1\nname bad\nlattice e8 aut\n")), DomainError);
    EXPECT_THROW(read_genus_file(scratch("bad2.genus", "siegelkit-genus 1\nname bad\nlattice e8 aut -3\n")), DomainError);
    EXPECT_THROW(load_genus(scratch("bad3.genus", "siegelkit-genus 1\nname bad\nlattice nowhere\n").string()), DomainError);
}

TEST(FormFiles, ParseAndReject) {
    const EigenformFile e = read_eigenform_file(scratch("t.eigen", "siegelkit-eigenform 1\nname t\nweight 12\n2 -24\n3 252\n"));
    EXPECT_EQ(e.a_p.at(3), 252);
    EXPECT_THROW(read_eigenform_file(scratch("b.eigen", "siegelkit-eigenform 1\nname t\nweight 12\n2 x\n")), DomainError);
    EXPECT_THROW(read_eigenform_file(scratch("c.eigen", "siegelkit-plusform 1\n")), DomainError);
    const PlusFormFile p = read_plusform_file(scratch("t.plus", "siegelkit-plusform 1\nname t\nweight-numerator 13\n1 1\n4 -56/3\n"));
    EXPECT_EQ(p.C.at(4), Rational(-56, 3));
    EXPECT_EQ(p.coefficients().k(), 6);
    EXPECT_THROW(read_plusform_file(scratch("b.plus", "siegelkit-plusform 1\nname t\n1 1\n")), DomainError);
    EXPECT_THROW(resolve_form_file("missing", ".eigen"), DomainError);
}

TEST(XiParsing, AllSpellings) {
    const HalfIntegralForm a = parse_xi("1,1/2;1/2,1");
    EXPECT_EQ(parse_xi("gram:a2"), resolve_lattice("a2").as_form());
    EXPECT_EQ(parse_xi(scratch("xi.rows", "1 1/2\n1/2 1\n").string()), a);
    EXPECT_EQ(parse_xi(scratch("xi.csv", "1,1/2\n1/2,1\n").string()), a);
    EXPECT_EQ(parse_xi((data_dir() / "lattices" / "e8.lattice").string()), resolve_lattice("e8").as_form());
    EXPECT_THROW(parse_xi("gram:nothing"), DomainError);
    EXPECT_THROW(parse_xi("1,1/3;1/3,1"), DomainError);
}

TEST(ClassFunctionParsing, NamedAndConstant) {
    const GenusWithWeights g = load_genus("rank16");
    const ClassFunction f = parse_class_function("E8+E8=3,D16+=-5/2", g);
    EXPECT_EQ(f.at("D16+"), Rational(-5, 2));
    const ClassFunction c = parse_class_function("const:7", g);
    EXPECT_EQ(c.size(), 2u);
    EXPECT_EQ(c.at("E8+E8"), 7);
    EXPECT_THROW(parse_class_function("E8+E8", g), DomainError);
    EXPECT_THROW(parse_class_function("const:x", g), DomainError);
}
