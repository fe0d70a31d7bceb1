#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "cli.hpp"
#include "divkit/json_text.hpp"
#include "divkit/measure_id.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "divkit");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = divkit::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    TempDir() {
        path_ = fs::temp_directory_path() / ("divkit_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }

    std::string write(const std::string& name, const std::string& text) const {
        const fs::path p = path_ / name;
        std::ofstream(p) << text;
        return p.string();
    }
    std::string path(const std::string& name) const { return (path_ / name).string(); }

private:
    fs::path path_;
};

double value_of(const Run& r) {
    return ordered_json::parse(r.out)["value"].get<double>();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("compute") {
    TempDir dir;
    const std::string a = dir.write("a.json", "[0.75, 0.25]");
    const std::string b = dir.write("b.json", "[0.25, 0.75]");
    const Run delta = run({"compute", "--measure", "delta", "--p", a, "--q", b});
    CHECK(delta.code == divkit::cli::kOk);
    CHECK(value_of(delta) == doctest::Approx(0.5).epsilon(1e-15));

    const double k1 = value_of(run({"compute", "--measure", "k_t:1", "--p", a, "--q", b}));
    const double b1 = value_of(run({"compute", "--measure", "b1", "--p", a, "--q", b}));
    CHECK(k1 == doctest::Approx(b1).epsilon(1e-14));

    CHECK(value_of(run({"compute", "--measure", "l:7", "--p", a, "--q", a})) == 0.0);

    const Run csv = run({"compute", "--measure", "delta", "--p", a, "--q", b, "--format", "csv"});
    CHECK(csv.out.rfind("measure,value,dims,inputs_hash\ndelta,0.5,2,", 0) == 0);
}

TEST_CASE("input formats") {
    TempDir dir;
    const std::string csv = dir.write("p.csv", "prob\n0.2\n0.3\n\n0.5\n");
    const std::string json = dir.write("q.json", "[\n  0.5,\n  0.25,\n  0.25\n]\n");
    CHECK(run({"compute", "--measure", "j", "--p", csv, "--q", json}).code == 0);

    const std::string counts = dir.write("c.csv", "9\n0\n");
    const std::string flat = dir.write("f.csv", "1\n1\n");
    const Run smoothed = run({"compute", "--measure", "delta", "--counts", "--p", counts, "--q", flat});
    CHECK(smoothed.code == 0);
    // (0.95, 0.05) against (0.5, 0.5)
    CHECK(value_of(smoothed) == doctest::Approx(0.45 * 0.45 / 1.45 + 0.45 * 0.45 / 0.55).epsilon(1e-12));
}

TEST_CASE("input errors name file and line") {
    TempDir dir;
    const std::string good = dir.write("good.json", "[0.5, 0.5]");
    const std::string zero = dir.write("zero.csv", "0.5\n0\n0.5\n");
    const Run z = run({"compute", "--measure", "delta", "--p", zero, "--q", good});
    CHECK(z.code == divkit::cli::kInputError);
    CHECK(z.err.find("zero.csv:2") != std::string::npos);

    const std::string broken = dir.write("broken.json", "[0.5,\n0.5,\n]");
    const Run bj = run({"compute", "--measure", "delta", "--p", broken, "--q", good});
    CHECK(bj.code == divkit::cli::kInputError);
    CHECK(bj.err.find("broken.json:3") != std::string::npos);

    const std::string text = dir.write("text.csv", "0.5\nabc\n");
    const Run t = run({"compute", "--measure", "delta", "--p", text, "--q", good});
    CHECK(t.code == divkit::cli::kInputError);
    CHECK(t.err.find("text.csv:2") != std::string::npos);

    const std::string wide = dir.write("wide.csv", "0.5,0.1\n0.5,0.9\n");
    CHECK(run({"compute", "--measure", "delta", "--p", wide, "--q", good}).code == divkit::cli::kInputError);

    const std::string off = dir.write("off.json", "[0.5, 0.6]");
    CHECK(run({"compute", "--measure", "delta", "--p", off, "--q", good}).code == divkit::cli::kInputError);

    CHECK(run({"compute", "--measure", "delta", "--p", dir.path("missing.json"), "--q", good}).code ==
          divkit::cli::kInputError);
    CHECK(run({"compute", "--measure", "nope", "--p", good, "--q", good}).code == divkit::cli::kInputError);
    CHECK(run({"compute", "--measure", "delta", "--p", good}).code == divkit::cli::kInputError);
    CHECK(run({"frobnicate"}).code == divkit::cli::kInputError);
}

TEST_CASE("dimension mismatch") {
    TempDir dir;
    const std::string two = dir.write("two.json", "[0.5, 0.5]");
    const std::string three = dir.write("three.json", "[0.2, 0.3, 0.5]");
    const Run r = run({"compute", "--measure", "delta", "--p", two, "--q", three});
    CHECK(r.code == divkit::cli::kDimensionMismatch);
    CHECK(run({"report", "--p", two, "--q", three}).code == divkit::cli::kDimensionMismatch);
}

TEST_CASE("verify") {
    const Run ok = run({"verify", "--chain", "eq15", "--trials", "100000", "--dims", "2..10", "--seed", "7"});
    CHECK(ok.code == divkit::cli::kOk);
    CHECK(ordered_json::parse(ok.out)["verified"].get<bool>());

    CHECK(run({"verify", "--chain", "eq33", "--trials", "2000"}).code == divkit::cli::kOk);
    CHECK(run({"verify", "--chain", "nope"}).code == divkit::cli::kInputError);
    CHECK(run({"verify", "--chain", "eq15", "--trials", "0"}).code == divkit::cli::kInputError);
    CHECK(run({"verify", "--chain", "eq15", "--dims", "1..3"}).code == divkit::cli::kInputError);

    const Run bad = run({"verify", "--chain", "eq29", "--trials", "2000", "--max-violations", "3"});
    CHECK(bad.code == divkit::cli::kFailed);
    const ordered_json j = ordered_json::parse(bad.out);
    CHECK(j["violations"].size() == 3);
    CHECK(j["violation_count"].get<std::size_t>() > 3);
}

TEST_CASE("verify is byte-for-byte reproducible") {
    const std::vector<std::string> args{"verify", "--chain", "eq21", "--trials", "3000", "--seed", "42"};
    const Run a = run(args);
    const Run b = run(args);
    CHECK(a.out == b.out);
    CHECK(divkit::to_json_text(ordered_json::parse(a.out)) == a.out);
}

TEST_CASE("seed falls back to the environment") {
    ::setenv("DIVKIT_SEED", "1234", 1);
    const Run r = run({"verify", "--chain", "eq15", "--trials", "10"});
    CHECK(ordered_json::parse(r.out)["seed"].get<std::uint64_t>() == 1234);
    const Run explicit_seed = run({"verify", "--chain", "eq15", "--trials", "10", "--seed", "5"});
    CHECK(ordered_json::parse(explicit_seed.out)["seed"].get<std::uint64_t>() == 5);
    ::setenv("DIVKIT_SEED", "twelve", 1);
    CHECK(run({"verify", "--chain", "eq15", "--trials", "10"}).code == divkit::cli::kInputError);
    ::unsetenv("DIVKIT_SEED");
}

TEST_CASE("identities command") {
    CHECK(run({"identities", "--group", "l-closed", "--trials", "1000"}).code == divkit::cli::kOk);
    const Run all = run({"identities", "--trials", "500", "--format", "csv"});
    CHECK(all.code == divkit::cli::kFailed);  // typeset L forms with errata
    CHECK(all.out.find("l6-printed") != std::string::npos);
    CHECK(run({"identities", "--group", "bogus"}).code == divkit::cli::kInputError);
}

TEST_CASE("beta") {
    const Run r = run({"beta", "--ratio", "d:t-delta/d:k0-delta"});
    CHECK(r.code == 0);
    CHECK(ordered_json::parse(r.out)["beta_hat"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
    const Run same = run({"beta", "--ratio", "psi/psi"});
    CHECK(ordered_json::parse(same.out)["beta_hat"].get<double>() == doctest::Approx(1.0));
    const Run label = run({"beta", "--ratio", "L4_K3"});
    CHECK(ordered_json::parse(label.out)["match"].get<bool>());

    const Run all = run({"beta", "--all"});
    CHECK(all.code == 0);
    const ordered_json j = ordered_json::parse(all.out);
    CHECK(j["matched"].get<int>() == 34);
    CHECK(j["total"].get<int>() == 34);
    CHECK(run({"beta", "--all"}).out == all.out);

    CHECK(run({"beta", "--ratio", "psi"}).code == divkit::cli::kInputError);
    CHECK(run({"beta", "--ratio", "psi/nope"}).code == divkit::cli::kInputError);
    CHECK(run({"beta"}).code == divkit::cli::kInputError);
}

TEST_CASE("report") {
    TempDir dir;
    const std::string p = dir.write("p.json", "[0.1, 0.2, 0.3, 0.4]");
    const std::string q = dir.write("q.json", "[0.4, 0.3, 0.2, 0.1]");
    const Run same = run({"report", "--p", p, "--q", p});
    CHECK(same.code == 0);
    const ordered_json zero = ordered_json::parse(same.out);
    for (const auto& row : zero["rows"]) CHECK(row["value"].get<double>() == 0.0);

    const Run r = run({"report", "--p", p, "--q", q});
    const ordered_json j = ordered_json::parse(r.out);
    const auto& ids = divkit::catalog_ids();
    for (std::size_t i = 0; i < ids.size(); ++i) CHECK(j["rows"][i]["measure"] == ids[i].name());
    CHECK(j["rows"].back()["measure"] == "partial_sum:20");

    // Scaled members of the eight-member ordering appear in increasing order.
    auto row = [&](const std::string& name) {
        for (const auto& x : j["rows"]) {
            if (x["measure"] == name) return x["value"].get<double>();
        }
        FAIL("missing row " << name);
        return 0.0;
    };
    double prev = 0.0;
    for (const auto& m : divkit::chain_members()) {
        const double v = static_cast<double>(m.coeff.numerator()) / m.coeff.denominator() *
                         row(divkit::MeasureId::of(m.id).name());
        CHECK(v >= prev);
        prev = v;
    }
    CHECK(divkit::to_json_text(j) == r.out);

    const Run csv = run({"report", "--p", p, "--q", q, "--format", "csv"});
    CHECK(csv.out.rfind("measure,value\ndelta,", 0) == 0);
}

TEST_CASE("out file") {
    TempDir dir;
    const std::string p = dir.write("p.json", "[0.5, 0.5]");
    const std::string q = dir.write("q.json", "[0.9, 0.1]");
    const std::string target = dir.path("result.json");
    const Run r = run({"compute", "--measure", "t", "--p", p, "--q", q, "--out", target});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(target);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(ordered_json::parse(buf.str())["measure"] == "t");
}

TEST_CASE("installed binary exit codes") {
    const std::string cmd = std::string(DIVKIT_CLI_PATH) + " verify --chain eq15 --trials 100 > /dev/null";
    CHECK(std::system(cmd.c_str()) == 0);
    const std::string bad = std::string(DIVKIT_CLI_PATH) + " verify --chain nope 2> /dev/null";
    const int status = std::system(bad.c_str());
    CHECK(WEXITSTATUS(status) == divkit::cli::kInputError);
}

}
