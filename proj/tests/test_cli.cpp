#include <doctest.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "cli_examples.hpp"
#include "qsubfactor/cli.hpp"

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = qsf::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("fuse") {
    const auto r = run({"fuse", "--rep", "1/2", "--rep2", "1/2"});
    CHECK(r.code == 0);
    CHECK(r.out == "0 + 1\n");
    CHECK(r.err.empty());
}

TEST_CASE("index as json") {
    const auto r = run({"index", "--rep", "1/2", "--q", "0.5", "--format", "json"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["poly"] == "q^-2 + 2 + q^2");
    CHECK(j["value"] == 6.25);
    CHECK(j["schema"] == 1);
}

TEST_CASE("type3 on a mixed-parity representation") {
    const auto r = run({"type3", "--rep", "0 + 1/2", "--q", "0.5", "--format", "json"});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["essentially_type_II"] == false);
    const auto t = run({"type3", "--rep", "0 + 1/2", "--q", "0.5"});
    CHECK(t.out.find("essentially_type_II  false") != std::string::npos);
}

TEST_CASE("tower text lists Catalan dimensions") {
    const auto r = run({"tower", "--rep", "1/2", "--n", "4"});
    CHECK(r.code == 0);
    for (const char* d : {" 1  ", " 2  ", " 5  ", " 14  ", " 42  "}) CHECK(r.out.find(d) != std::string::npos);
}

TEST_CASE("documented examples are deterministic") {
    for (const auto& ex : qsf::testing::documented_examples()) {
        const auto a = run(ex), b = run(ex);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        CHECK(!a.out.empty());
    }
}

TEST_CASE("exit code contract") {
    auto code_and_prefix = [](const std::vector<std::string>& args, int want, const std::string& prefix) {
        const auto r = run(args);
        CHECK(r.code == want);
        CHECK(r.out.empty());
        CHECK(r.err.rfind(prefix, 0) == 0);
    };
    code_and_prefix({"fuse", "--rep", "1/2 +", "--rep2", "1"}, 2, "error: parse:");
    code_and_prefix({"fuse", "--rep", "1/3", "--rep2", "1"}, 2, "error: parse:");
    code_and_prefix({"fuse", "--rep", "1/2", "--rep2", "1", "--so3"}, 2, "error: parse:");
    code_and_prefix({"index", "--rep", "1/2", "--q", "1.5"}, 2, "error: domain:");
    code_and_prefix({"type3", "--rep", "1/2"}, 2, "error: domain:");
    code_and_prefix({"tower", "--rep", "1/2", "--n", "13"}, 2, "error: domain:");
    code_and_prefix({"tower", "--rep", "1/2", "--n", "-1"}, 2, "error: domain:");
    code_and_prefix({"frobnicate"}, 2, "error: usage:");
    code_and_prefix({"verify", "nonsense"}, 2, "error: usage:");
    code_and_prefix({"index", "--rep", "1/2", "--q", "abc"}, 2, "error: usage:");
    code_and_prefix({}, 2, "error: usage:");
}

TEST_CASE("tolerance failures exit 3") {
    const auto r = run({"verify", "cg", "--q", "0.5", "--tol", "1e-300"});
    CHECK(r.code == 3);
    CHECK(r.out.find("FAIL") != std::string::npos);
    const auto ok = run({"verify", "cg", "--q", "0.5"});
    CHECK(ok.code == 0);
    const auto t = run({"type3", "--rep", "2x1/2", "--q", "0.5", "--sigma", "1/2", "--tol", "0"});
    CHECK((t.code == 0 || t.code == 3));
}

TEST_CASE("depth cap can be raised") {
    CHECK(run({"tower", "--rep", "1/2", "--n", "13", "--max-n", "13"}).code == 0);
}

TEST_CASE("help") {
    const auto r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("verify") != std::string::npos);
}
