#include "xcat/construct.hpp"
#include "xcat/forms.hpp"
#include "xcat/serialize.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

using namespace xcat;
namespace fs = std::filesystem;

namespace {

template <Field F>
GradedObject<F> build(const std::string& rs, const FieldContext<F>& ctx, Weight lambda,
                      BuildPolicy policy = BuildPolicy::dominant_auto()) {
    return build_simple(BuildRequest<F>{RootSystem::parse(rs), ctx, std::move(lambda), policy, {}, 1});
}

class TempDir {
public:
    TempDir() {
        path_ = fs::temp_directory_path() / ("xcat-test-" + std::to_string(::getpid()) + "-" +
                                             ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

std::string replace_line(const std::string& text, const std::string& prefix, const std::string& with) {
    const auto at = text.find("\n" + prefix);
    if (at == std::string::npos) return text;
    const auto end = text.find('\n', at + 1);
    return text.substr(0, at + 1) + with + text.substr(end);
}

}  // namespace

TEST(Serialize, RoundTripIsByteIdentical) {
    const auto ctx = make_context(PrimeField(3), "1");
    const auto S = build("A2", ctx, Weight{2, 1});
    const std::string text = serialize(S);
    const auto loaded = deserialize(text, ctx.field);
    EXPECT_FALSE(loaded.form.has_value());
    EXPECT_EQ(serialize(loaded.object), text);
    EXPECT_EQ(character(loaded.object), character(S));
    EXPECT_TRUE(verify_axioms(loaded.object, 4).pass());
}

TEST(Serialize, RoundTripWithFormAndCyclotomicEntries) {
    const auto ctx = make_context(CyclotomicField(5), "zeta^2");
    const auto S = build("A2", ctx, Weight{3, 1});
    const auto b = build_form(S);
    const std::string text = serialize(S, &b);
    const auto loaded = deserialize(text, ctx.field);
    ASSERT_TRUE(loaded.form.has_value());
    EXPECT_EQ(serialize(loaded.object, &*loaded.form), text);
    EXPECT_TRUE(verify_adjointness(loaded.object, *loaded.form, 4).pass());
}

TEST(Serialize, TruncatedObjectKeepsItsBookkeeping) {
    const auto ctx = make_context(RationalField{}, "1");
    const auto M = build("A1", ctx, Weight{-1}, BuildPolicy::fixed_depth(3));
    const auto loaded = deserialize(serialize(M), ctx.field).object;
    EXPECT_FALSE(loaded.complete);
    EXPECT_EQ(loaded.truncation_height, 3);
    EXPECT_EQ(loaded.policy, M.policy);
    EXPECT_EQ(serialize(loaded), serialize(M));
}

TEST(Serialize, KeyDependsOnEveryRequestField) {
    CacheRequest base{"A2", "fp:3", "1", "qbinom", "1,1", "dominant"};
    const std::string k = cache_key(base);
    EXPECT_EQ(k.size(), 16u);
    for (std::string CacheRequest::*field :
         {&CacheRequest::rs, &CacheRequest::field, &CacheRequest::q, &CacheRequest::lambda, &CacheRequest::policy}) {
        CacheRequest r = base;
        r.*field += "x";
        EXPECT_NE(cache_key(r), k);
    }
    // Offset basis of 64-bit FNV-1a.
    EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ull);
    EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cull);
}

TEST(Deserialize, RejectsMalformedInput) {
    const auto ctx = make_context(PrimeField(2), "1");
    const std::string text = serialize(build("A2", ctx, Weight{1, 1}));

    auto expect_cache_error = [&](const std::string& bad, const std::string& fragment) {
        try {
            deserialize(bad, ctx.field);
            ADD_FAILURE() << "accepted: " << fragment;
        } catch (const CacheError& e) {
            EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
        }
    };
    expect_cache_error("xcat-object v9\n" + text.substr(text.find('\n') + 1), "unknown format");
    expect_cache_error(replace_line(text, "lambda ", "lambda 1,0"), "key does not match");
    expect_cache_error(text.substr(0, text.size() / 2), "cache: line");
    expect_cache_error(replace_line(text, "E ", "E 1 x"), "cache:");
    expect_cache_error(replace_line(text, "weights ", "weights nine"), "line 12");
    EXPECT_THROW(deserialize(text, PrimeField(3)), CacheError);
    EXPECT_THROW(deserialize("", ctx.field), CacheError);
}

TEST(ObjectCache, WriteReadListClear) {
    TempDir dir;
    const ObjectCache cache(dir.path() / "nested");
    const auto ctx = make_context(PrimeField(2), "1");
    const auto S = build("A2", ctx, Weight{1, 0});
    const CacheRequest req = request_of(S);

    EXPECT_FALSE(cache.read(req).has_value());
    EXPECT_TRUE(cache.entries().empty());
    cache.write(req, serialize(S));
    ASSERT_TRUE(cache.read(req).has_value());
    EXPECT_EQ(*cache.read(req), serialize(S));
    EXPECT_EQ(cache.path_for(req).filename().string(), cache_key(req) + ".xcat");

    // Overwriting leaves a single entry and no temporary files behind.
    cache.write(req, serialize(S));
    const auto T = build("A2", ctx, Weight{0, 1});
    cache.write(request_of(T), serialize(T));
    EXPECT_EQ(cache.entries().size(), 2u);
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(cache.directory())) {
        ++files;
        EXPECT_EQ(e.path().extension(), ".xcat") << e.path();
    }
    EXPECT_EQ(files, 2u);

    EXPECT_EQ(cache.clear(), 2u);
    EXPECT_TRUE(cache.entries().empty());
    EXPECT_FALSE(cache.read(req).has_value());
}

TEST(ObjectCache, UnwritableDirectoryIsACacheError) {
    TempDir dir;
    fs::create_directories(dir.path());
    const fs::path blocker = dir.path() / "file";
    std::ofstream(blocker) << "x";
    const ObjectCache cache(blocker / "sub");
    EXPECT_THROW(cache.write(CacheRequest{"A1", "q", "1", "qbinom", "0", "dominant"}, "x"), CacheError);
}
