#include "xcat/cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace xcat;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

class CacheDir : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("xcat-cli-" + std::to_string(::getpid()) + "-" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string dir() const { return dir_.string(); }

    fs::path dir_;
};

}  // namespace

TEST(Char, DocumentedExamples) {
    const Outcome a = run({"char", "A1", "fp:2", "--q", "1", "--lambda", "3", "--format", "csv"});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out.substr(a.out.find('\n') + 1), "3,1\n1,1\n-1,1\n-3,1\n");

    const Outcome b = run({"char", "A2", "rational", "--q", "1", "--lambda", "1,1", "--format", "json"});
    ASSERT_EQ(b.code, 0) << b.err;
    const auto j = nlohmann::json::parse(b.out);
    EXPECT_EQ(j["total"], 8);
    EXPECT_EQ(j["rows"].size(), 7u);
    EXPECT_EQ(j["rows"][0]["weight"], nlohmann::json::array({1, 1}));
    EXPECT_EQ(j["meta"]["ell"], 0);

    const Outcome c = run({"char", "A1", "rational", "--q", "1", "--lambda", "-1", "--depth", "3", "--format", "json"});
    ASSERT_EQ(c.code, 0) << c.err;
    const auto k = nlohmann::json::parse(c.out);
    EXPECT_EQ(k["meta"]["complete"], false);
    EXPECT_EQ(k["rows"].size(), 4u);
}

TEST(Char, OtherFormats) {
    const Outcome tex = run({"char", "A1", "fp:3", "--lambda", "2", "--format", "tex"});
    ASSERT_EQ(tex.code, 0);
    EXPECT_TRUE(contains(tex.out, "\\chi = e^{(2)}")) << tex.out;
    const Outcome text = run({"char", "A2", "rational", "--lambda", "1,1", "--format", "text"});
    EXPECT_TRUE(contains(text.out, "# rs: A2")) << text.out;
    EXPECT_TRUE(contains(text.out, "0,0\t2"));
    EXPECT_TRUE(contains(text.out, "total\t8"));
}

TEST(Char, JsonOutputIsByteStable) {
    const std::vector<std::string> args{"char", "A2", "cyclo:5", "--q", "zeta^2", "--lambda", "3,1", "--format", "json"};
    const Outcome first = run(args);
    ASSERT_EQ(first.code, 0) << first.err;
    EXPECT_EQ(run(args).out, first.out);
    auto threaded = args;
    threaded.insert(threaded.end(), {"--threads", "3"});
    EXPECT_EQ(run(threaded).out, first.out);
}

TEST(Char, UsageErrorsExitTwo) {
    EXPECT_EQ(run({"char", "A1", "rational", "--lambda", "-1"}).code, 2);                   // non-dominant without depth
    EXPECT_EQ(run({"char", "A1", "fp:4", "--lambda", "1"}).code, 2);                        // not a prime
    EXPECT_EQ(run({"char", "A1", "cyclo:4", "--q", "zeta^1", "--lambda", "1"}).code, 2);   // even order
    EXPECT_EQ(run({"char", "B2", "rational", "--lambda", "1,1"}).code, 2);
    EXPECT_EQ(run({"char", "A2", "rational", "--lambda", "1"}).code, 2);
    EXPECT_EQ(run({"char", "A1", "rational", "--lambda", "1", "--format", "xml"}).code, 2);
    EXPECT_EQ(run({"bogus"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
}

TEST(Verify, InGridRequestsPass) {
    for (const std::vector<std::string>& args :
         {std::vector<std::string>{"verify", "A2", "fp:2", "--lambda", "1,1"},
          std::vector<std::string>{"verify", "A1", "cyclo:3", "--q", "zeta^1", "--lambda", "5"},
          std::vector<std::string>{"verify", "A1", "rational", "--lambda", "-2", "--depth", "3"}}) {
        const Outcome r = run(args);
        EXPECT_EQ(r.code, 0) << r.out << r.err;
        EXPECT_TRUE(contains(r.out, "verify: PASS"));
    }
}

TEST(Verify, SkipFormsOmitsFormChecks) {
    const Outcome full = run({"verify", "A2", "fp:3", "--lambda", "1,0"});
    ASSERT_EQ(full.code, 0);
    EXPECT_TRUE(contains(full.out, "adjointness"));
    const Outcome skipped = run({"verify", "A2", "fp:3", "--lambda", "1,0", "--skip-forms"});
    ASSERT_EQ(skipped.code, 0);
    EXPECT_FALSE(contains(skipped.out, "adjointness"));
    EXPECT_FALSE(contains(skipped.out, "nondegenerate"));
    EXPECT_TRUE(contains(skipped.out, "axioms"));
}

TEST_F(CacheDir, HitGivesIdenticalOutput) {
    const std::vector<std::string> args{"char", "A2", "fp:3", "--lambda", "2,1", "--format", "json", "--cache-dir", dir()};
    const Outcome miss = run(args);
    ASSERT_EQ(miss.code, 0) << miss.err;
    ASSERT_EQ(std::distance(fs::directory_iterator(dir_), fs::directory_iterator{}), 1);
    const Outcome hit = run(args);
    EXPECT_EQ(hit.out, miss.out);

    const Outcome list = run({"cache", "list", "--cache-dir", dir()});
    EXPECT_TRUE(contains(list.out, ".xcat")) << list.out;
    EXPECT_EQ(run({"cache", "clear", "--cache-dir", dir()}).code, 0);
    EXPECT_EQ(std::distance(fs::directory_iterator(dir_), fs::directory_iterator{}), 0);
}

TEST_F(CacheDir, FaultInjectedEntryFailsVerification) {
    ASSERT_EQ(run({"char", "A1", "rational", "--lambda", "2", "--cache-dir", dir()}).code, 0);
    const fs::path entry = fs::directory_iterator(dir_)->path();
    std::ifstream in(entry);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    in.close();
    // The first E block is E_{alpha,1} from -2 to 0; replace its entry with 5.
    const auto at = text.find("\nE ");
    ASSERT_NE(at, std::string::npos);
    const auto end = text.find('\n', at + 1);
    text.replace(at + 1, end - at - 1, "E 5");
    std::ofstream(entry) << text;

    const Outcome r = run({"verify", "A1", "rational", "--lambda", "2", "--cache-dir", dir()});
    EXPECT_EQ(r.code, 1) << r.out << r.err;
    EXPECT_TRUE(contains(r.out, "X2'")) << r.out;
    EXPECT_TRUE(contains(r.out, "verify: FAIL"));
}

TEST_F(CacheDir, UnknownVersionExitsThree) {
    ASSERT_EQ(run({"char", "A1", "fp:2", "--lambda", "1", "--cache-dir", dir()}).code, 0);
    const fs::path entry = fs::directory_iterator(dir_)->path();
    std::ifstream in(entry);
    std::stringstream ss;
    ss << in.rdbuf();
    in.close();
    std::string text = ss.str();
    text.replace(0, text.find('\n'), "xcat-object v9");
    std::ofstream(entry) << text;
    const Outcome r = run({"char", "A1", "fp:2", "--lambda", "1", "--cache-dir", dir()});
    EXPECT_EQ(r.code, 3);
    EXPECT_TRUE(contains(r.err, "unknown format"));
}

TEST(Theorems, SteinbergAndFrobeniusExamples) {
    const Outcome st = run({"steinberg", "A1", "fp:2", "--q", "1", "--lambda0", "1", "--lambda1", "1"});
    EXPECT_EQ(st.code, 0) << st.out << st.err;
    const Outcome fr = run({"frobenius", "A2", "cyclo:3", "--q", "zeta^1", "--lambda", "1,0"});
    EXPECT_EQ(fr.code, 0) << fr.out << fr.err;
    const Outcome st2 = run({"steinberg", "A2", "fp:2", "--lambda0", "1,1", "--lambda1", "0,1"});
    EXPECT_EQ(st2.code, 0) << st2.out << st2.err;
}

TEST(Theorems, HypothesisViolationsExitTwo) {
    const Outcome r = run({"steinberg", "A1", "fp:2", "--q", "1", "--lambda0", "2", "--lambda1", "1"});
    EXPECT_EQ(r.code, 2);
    EXPECT_TRUE(contains(r.err, "not restricted")) << r.err;
    EXPECT_EQ(run({"frobenius", "A1", "rational", "--lambda", "1"}).code, 2);
    EXPECT_EQ(run({"steinberg", "A1", "rational", "--lambda0", "0", "--lambda1", "1"}).code, 2);
}

TEST(Identities, RangesAndCorruption) {
    const Outcome small = run({"identities", "--range", "1"});
    EXPECT_EQ(small.code, 0) << small.err;
    EXPECT_TRUE(contains(small.out, "identities: PASS"));
    EXPECT_EQ(run({"identities", "--range", "8"}).code, 0);
    const Outcome bad = run({"identities", "--range", "3", "--corrupt", "3,1"});
    EXPECT_EQ(bad.code, 1);
    EXPECT_TRUE(contains(bad.out, "FAIL"));
}

TEST(Decompose, DirectSumAndTensor) {
    const Outcome sum = run({"decompose", "A2", "fp:2", "--lambda", "1,0", "--lambda", "0,1", "--format", "csv"});
    ASSERT_EQ(sum.code, 0) << sum.err;
    EXPECT_TRUE(contains(sum.out, "1,0,1"));
    EXPECT_TRUE(contains(sum.out, "0,1,1"));
    const Outcome tensor = run({"decompose", "A1", "fp:3", "--lambda0", "2", "--lambda1", "1", "--format", "csv"});
    ASSERT_EQ(tensor.code, 0) << tensor.err;
    EXPECT_TRUE(contains(tensor.out, "5,1")) << tensor.out;
}

TEST(Binary, ExitCodesPropagate) {
    const std::string bin = XCAT_BINARY;
    auto status = [&](const std::string& args) {
        const int raw = std::system((bin + " " + args + " > /dev/null 2>&1").c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    EXPECT_EQ(status("char A1 fp:2 --lambda 3"), 0);
    EXPECT_EQ(status("steinberg A1 fp:2 --lambda0 2 --lambda1 1"), 2);
    EXPECT_EQ(status("identities --range 2 --corrupt 2,1"), 1);
    EXPECT_EQ(status("--help"), 0);
}
