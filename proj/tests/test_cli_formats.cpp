#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "doctest.h"
#include "gext/cohomology.hpp"
#include "gext/metric.hpp"
#include "gext/report.hpp"

using namespace gext;

namespace {

std::string run_cli(const std::string& args, int* exit_code) {
    std::string cmd = "./gext " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int status = pclose(p);
    *exit_code = WEXITSTATUS(status);
    return out;
}

bool have_cli() {
    std::ifstream f("./gext");
    return f.good();
}

}  // namespace

TEST_CASE("cochain file format: header, sparse lines, defaults") {
    auto G = make_group("C3");
    Cochain f = mu_cochain(G, 2, 9);
    f.at({1, 2}) = {5};
    f.at({2, 2}) = {7};
    std::string text = write_cochain(f);
    Cochain g = read_cochain(text);
    CHECK(equal(f, g));
    // missing tuples default to zero
    Cochain h = read_cochain("degree 2 modulus-vector 9 group C3\n1 2 | 5\n");
    CHECK(h.at({1, 2})[0] == 5);
    CHECK(h.at({2, 1})[0] == 0);
    CHECK_THROWS_AS(read_cochain("degree 2 modulus 9 group C3\n"), std::invalid_argument);
    CHECK_THROWS_AS(read_cochain("degree 1 modulus-vector 9 group C3\n7 | 1\n"), std::invalid_argument);
    // multi-coordinate coefficients
    Cochain m = zero_cochain(parse_module("triv:C2xC4", G), 1);
    m.at({2}) = {1, 3};
    CHECK(equal(read_cochain(write_cochain(m)), m));
}

TEST_CASE("form file format round trip and validation errors") {
    QuadraticForm Q = read_form("group C2xC2 modulus 2\n1,1 -> 1\n");
    CHECK(Q.q == std::vector<ll>{0, 0, 0, 1});
    CHECK(write_form(Q).find("1,1 -> 1") != std::string::npos);
    CHECK_THROWS_AS(read_form("group C4 modulus 8\n1 -> 3\n"), std::invalid_argument);  // q(-x) != q(x)
}

TEST_CASE("module file format round trip") {
    auto G = make_group("C2");
    auto mod = parse_module("neg:C3xC3", G);
    std::string text = write_module(*mod);
    {
        std::ofstream out("/tmp/gext_mod_test.module");
        out << text;
    }
    auto back = read_module_file("/tmp/gext_mod_test.module");
    CHECK(back->hash() == mod->hash());
    CHECK_FALSE(back->trivial);
    CHECK(cohomology(back, 1).z_order == 9);
}

TEST_CASE("report rendering: machine output is byte-stable and duration-free") {
    Report r;
    r.section("demo");
    r.add("alpha", static_cast<ll>(3));
    r.add_row({"a", "b"});
    std::string m1 = r.render_machine(), m2 = r.render_machine();
    CHECK(m1 == m2);
    CHECK(m1.find("duration") == std::string::npos);
    CHECK(m1 == "demo.alpha\t3\ndemo.row\ta  b\n");
    CHECK(r.render_text(5.0).find("duration-ms: 5") != std::string::npos);
}

TEST_CASE("cli: exit codes and byte-stable machine reports") {
    if (!have_cli()) return;  // set up only under ctest's working directory
    int code = 0;
    std::string out1 = run_cli("cohomology --group C2 --module neg:C3xC3 --degree 1 --support product --format machine", &code);
    CHECK(code == 0);
    CHECK(out1.find("cohomology.z-order\t9") != std::string::npos);
    CHECK(out1.find("cohomology.d1-order\t3") != std::string::npos);
    std::string out2 = run_cli("cohomology --group C2 --module neg:C3xC3 --degree 1 --support product --format machine", &code);
    CHECK(out1 == out2);
    run_cli("cohomology --group NOPE --module triv:C2 --degree 1", &code);
    CHECK(code == 2);
    run_cli("cohomology --group C2 --module triv:C2 --degree 4 --max-order 1", &code);
    CHECK(code == 1);
    std::string trivial = run_cli("cohomology --group C1 --module triv:C2 --degree 2 --format machine", &code);
    CHECK(code == 0);
    CHECK(trivial.find("cohomology.h-order\t1") != std::string::npos);
}
