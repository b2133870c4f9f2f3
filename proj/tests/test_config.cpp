#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "stairnet/config.hpp"

using namespace stairnet;

TEST(Config, ParsesFullFile) {
    std::string text =
        "# comment line\n"
        "kind = layerwise\n"
        "[target]\n"
        "type = truncated\n"
        "n = 12\n"
        "j = 2\n"
        "k = 5\n"
        "normalize = true\n"
        "[measure]\n"
        "type = biased\n"
        "p = 0.75\n"
        "[layerwise]\n"
        "width = 8\nlayers = 2\np1 = 0.1\np2 = 0.2\nlambda1 = 1e-4\nlambda2 = 1e-3\n"
        "eta = 0.02\nbatch = 32\neps_stop = 0.01\nalpha = 0.01\ntau = 0.1\n"
        "[run]\n"
        "seeds = 1, 2, 3\n"
        "dataset = 5000\n"
        "eval_interval = 50\n"
        "tracked = 1; 1,2; const\n"
        "out = artifacts\n";
    RunConfig c = parse_run_config(text);
    EXPECT_EQ(c.kind, ExperimentKind::Layerwise);
    EXPECT_EQ(c.target.type, "truncated");
    EXPECT_EQ(c.target.n, 12);
    EXPECT_EQ(c.target.j, 2);
    EXPECT_EQ(c.target.k, 5);
    EXPECT_TRUE(c.target.normalize);
    EXPECT_EQ(c.measure.type, "biased");
    EXPECT_DOUBLE_EQ(c.measure.p, 0.75);
    EXPECT_EQ(c.layerwise.width, 8);
    EXPECT_EQ(c.layerwise.batch, 32u);
    ASSERT_EQ(c.seeds.size(), 3u);
    EXPECT_EQ(c.seeds[2], 3u);
    EXPECT_EQ(c.dataset, 5000u);
    EXPECT_EQ(c.eval_interval, 50u);
    ASSERT_EQ(c.tracked.size(), 3u);
    EXPECT_EQ(c.tracked[1], Subset::of({1, 2}));
    EXPECT_EQ(c.tracked[2], Subset{});
    EXPECT_EQ(c.out_dir, "artifacts");
    EXPECT_NO_THROW(c.validate());
}

TEST(Config, UnknownKeyFailsWithLineNumber) {
    try {
        parse_run_config("kind = resnet\n[target]\nn = 4\nwat = 1\n");
        FAIL() << "expected parse error";
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("target.wat"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos);
    }
}

TEST(Config, MalformedLinesFail) {
    EXPECT_THROW(parse_run_config("[target\nn = 4\n"), std::invalid_argument);
    EXPECT_THROW(parse_run_config("[target]\nno equals sign\n"), std::invalid_argument);
    EXPECT_THROW(parse_run_config("[nosuchsection]\nx = 1\n"), std::invalid_argument);
    EXPECT_THROW(parse_run_config("kind = warp\n"), std::invalid_argument);
}

TEST(Config, EmptySeedsIsInvalid) {
    RunConfig c = parse_run_config("kind = resnet\n[target]\nn = 4\nk = 2\n");
    EXPECT_TRUE(c.seeds.empty());
    EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Config, TargetAndMeasureBuilders) {
    TargetSpec t;
    t.type = "double";
    t.n = 10;
    t.k = 3;
    t.l = 4;
    EXPECT_EQ(t.build().sparsity(), 6u);
    t.type = "nope";
    EXPECT_THROW(t.build(), std::invalid_argument);
    MeasureSpec m;
    m.type = "gaussian";
    EXPECT_EQ(m.build(5).kind, MeasureKind::Gaussian);
    m.type = "nope";
    EXPECT_THROW(m.build(5), std::invalid_argument);
}

TEST(Config, TrackedDefaultIsPrefixChain) {
    RunConfig c = parse_run_config("kind = resnet\n[target]\nn = 8\nk = 3\n[run]\nseeds = 1\n");
    auto tracked = c.tracked_or_default();
    ASSERT_EQ(tracked.size(), 3u);
    EXPECT_EQ(tracked[0], Subset::of({1}));
    EXPECT_EQ(tracked[2], Subset::range(1, 3));
    // double staircase tracks up to k + l - 1
    c.target.type = "double";
    c.target.l = 3;
    EXPECT_EQ(c.tracked_or_default().size(), 5u);
}

TEST(Presets, AllLoadAndValidate) {
    for (const auto& [name, text] : preset_table()) {
        RunConfig c = load_preset(name);
        EXPECT_NO_THROW(c.validate()) << name;
        EXPECT_FALSE(c.seeds.empty()) << name;
    }
    EXPECT_THROW(load_preset("nope"), std::invalid_argument);
}

TEST(Presets, Fig2PresetValues) {
    RunConfig c = load_preset("fig2-staircase");
    EXPECT_EQ(c.kind, ExperimentKind::Resnet);
    EXPECT_EQ(c.target.n, 30);
    EXPECT_EQ(c.target.k, 10);
    EXPECT_TRUE(c.target.normalize);
    EXPECT_EQ(c.resnet.width, 40);
    EXPECT_EQ(c.resnet.depth, 5);
    EXPECT_EQ(c.resnet.batch, 20u);
    EXPECT_EQ(c.resnet.steps, 300000u);
    EXPECT_EQ(c.dataset, 60000u);
    EXPECT_EQ(c.seeds.size(), 10u);
    RunConfig parity = load_preset("fig2-parity");
    EXPECT_EQ(parity.target.type, "parity");
    EXPECT_EQ(parity.target.k, 10);
}

TEST(Presets, BiasedPresetValues) {
    RunConfig c = load_preset("appendixA-biased");
    EXPECT_EQ(c.target.n, 30);
    EXPECT_EQ(c.target.k, 7);
    EXPECT_EQ(c.measure.type, "biased");
    EXPECT_DOUBLE_EQ(c.measure.p, 0.75);
    EXPECT_EQ(c.dataset, 60000u);
    EXPECT_EQ(c.resnet.batch, 20u);
}

TEST(Presets, FilesOnDiskMatchTable) {
    for (const auto& [name, text] : preset_table()) {
        std::ifstream in(std::string(STAIRNET_SOURCE_DIR) + "/presets/" + name + ".cfg");
        ASSERT_TRUE(in.good()) << name;
        std::ostringstream ss;
        ss << in.rdbuf();
        EXPECT_EQ(ss.str(), text) << name;
    }
}
