#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "bestshot/config_io.hpp"
#include "bestshot/defaults.hpp"
#include "bestshot/io.hpp"

using namespace bestshot;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("bestshot_io_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("matrix round trip is byte exact") {
    TempDir dir;
    std::mt19937_64 rng(137);
    std::uniform_real_distribution<float> u(-1, 1);
    EmbeddingMatrix m;
    m.rows = 7;
    m.cols = 5;
    for (std::uint32_t i = 0; i < 35; ++i) m.data.push_back(u(rng));
    save_matrix(dir.file("m.mat"), m);
    save_matrix(dir.file("m2.mat"), load_matrix(dir.file("m.mat")));

    std::ifstream a(dir.file("m.mat"), std::ios::binary);
    std::ifstream b(dir.file("m2.mat"), std::ios::binary);
    std::string bytes_a((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
    std::string bytes_b((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
    REQUIRE(bytes_a == bytes_b);
    REQUIRE(bytes_a.size() == 8 + 4 + 4 + 1 + 35 * 4);
}

TEST_CASE("matrix loader reports truncation with byte counts") {
    TempDir dir;
    // Header says 4x3 but only 11 floats follow.
    std::ofstream out(dir.file("bad.mat"), std::ios::binary);
    out.write(kMatrixMagic, 8);
    std::uint32_t rows = 4, cols = 3;
    std::uint8_t flag = 0;
    out.write(reinterpret_cast<char*>(&rows), 4);
    out.write(reinterpret_cast<char*>(&cols), 4);
    out.write(reinterpret_cast<char*>(&flag), 1);
    for (int i = 0; i < 11; ++i) {
        float v = 1.0f;
        out.write(reinterpret_cast<char*>(&v), 4);
    }
    out.close();
    try {
        load_matrix(dir.file("bad.mat"));
        FAIL("expected truncation error");
    } catch (const InputError& e) {
        REQUIRE(std::string(e.what()).find("48") != std::string::npos);
        REQUIRE(std::string(e.what()).find("44") != std::string::npos);
    }

    std::ofstream magic(dir.file("magic.mat"), std::ios::binary);
    magic << "NOTAMAT0";
    magic.close();
    REQUIRE_THROWS_AS(load_matrix(dir.file("magic.mat")), InputError);
}

TEST_CASE("pose records survive a fuzzed round trip") {
    TempDir dir;
    Skeleton s = default_skeleton();
    std::mt19937_64 rng(139);
    std::uniform_real_distribution<double> a(-1.0, 1.0);
    std::vector<PoseRecord> records;
    for (int i = 0; i < 20; ++i) {
        PoseRecord r;
        r.id = "p" + std::to_string(i);
        r.dataset = "synth";
        r.frame_index = i;
        RotationSet rot;
        for (std::size_t j = 0; j < s.joint_count(); ++j)
            rot.axis_angles.push_back({a(rng), a(rng), a(rng)});
        r.pose = forward_kinematics(rot, s);
        if (i % 2 == 0) r.rotations = rot;
        if (i % 3 == 0) r.description = "desc " + std::to_string(i);
        records.push_back(std::move(r));
    }
    save_pose_records(dir.file("poses.jsonl"), records);
    auto loaded = load_pose_records(dir.file("poses.jsonl"), s.joint_count());
    REQUIRE(loaded.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        REQUIRE(loaded[i].id == records[i].id);
        REQUIRE(loaded[i].description == records[i].description);
        REQUIRE(loaded[i].rotations.has_value() == records[i].rotations.has_value());
        for (std::size_t j = 0; j < s.joint_count(); ++j)
            REQUIRE((loaded[i].pose.joints[j] - records[i].pose.joints[j]).norm() < 1e-12);
    }
}

TEST_CASE("jsonl loaders report line numbers and reject duplicates") {
    TempDir dir;
    {
        std::ofstream out(dir.file("anns.jsonl"));
        out << R"({"schema":"annotation/1","query_id":"q1","video_id":"v","category":"Action",)"
            << R"("query":"x","intervals":[[0,5]],"video_length":100})" << "\n";
        out << R"({"schema":"annotation/1","query_id":"q1","video_id":"v","category":"Action",)"
            << R"("query":"x","intervals":[[0,5]],"video_length":100})" << "\n";
    }
    try {
        load_annotations(dir.file("anns.jsonl"));
        FAIL("expected duplicate error");
    } catch (const InputError& e) {
        std::string msg = e.what();
        REQUIRE(msg.find(":2:") != std::string::npos);
        REQUIRE(msg.find("q1") != std::string::npos);
    }

    {
        std::ofstream out(dir.file("broken.jsonl"));
        out << R"({"schema":"pose/1","id":"a","joints":[[0,0,0]]})" << "\n";
        out << "not json at all\n";
    }
    try {
        load_pose_records(dir.file("broken.jsonl"));
        FAIL("expected parse error");
    } catch (const InputError& e) {
        REQUIRE(std::string(e.what()).find(":2:") != std::string::npos);
    }
}

TEST_CASE("annotation frame-rate conversion") {
    TempDir dir;
    {
        std::ofstream out(dir.file("anns.jsonl"));
        // 2.0s..3.0s at 10 fps -> frames 20..30.
        out << R"({"query_id":"q1","video_id":"v","category":"Action","query":"x",)"
            << R"("intervals":[[2.0,3.0]],"video_length":60.0,"frame_rate":10.0})" << "\n";
        out << R"({"query_id":"q2","video_id":"v","category":"Pose","query":"x",)"
            << R"("intervals":[],"key_frame":1.5,"video_length":60.0,"frame_rate":10.0})" << "\n";
    }
    auto anns = load_annotations(dir.file("anns.jsonl"));
    REQUIRE(anns[0].intervals[0] == Interval{20, 30});
    REQUIRE(anns[0].video_length == 600);
    REQUIRE(anns[1].key_frame == 15);
}

TEST_CASE("annotation and prediction round trips") {
    TempDir dir;
    std::vector<QueryAnnotation> anns;
    QueryAnnotation a;
    a.query_id = "q1";
    a.video_id = "v1";
    a.category = QueryCategory::Pose;
    a.query_text = "standing with both arms raised";
    a.key_frame = 44;
    a.video_length = 100;
    a.fine_category = "jump";
    anns.push_back(a);
    save_annotations(dir.file("a.jsonl"), anns);
    auto loaded = load_annotations(dir.file("a.jsonl"));
    REQUIRE(loaded.size() == 1);
    REQUIRE(loaded[0].query_id == "q1");
    REQUIRE(loaded[0].key_frame == 44);
    REQUIRE(loaded[0].fine_category == "jump");

    std::vector<PredictionRecord> preds;
    PredictionRecord p;
    p.prediction.query_id = "q1";
    p.prediction.frame = 42;
    p.prediction.score = 0.75;
    preds.push_back(p);
    PredictionRecord seg;
    seg.prediction.query_id = "t1";
    seg.prediction.interval = Interval{5, 9};
    seg.prediction.score = 0.5;
    seg.video_id = "v1";
    seg.class_name = "jump";
    preds.push_back(seg);
    save_predictions(dir.file("p.jsonl"), preds);
    auto loaded_preds = load_predictions(dir.file("p.jsonl"));
    REQUIRE(loaded_preds.size() == 2);
    REQUIRE(loaded_preds[0].prediction.frame == 42);
    REQUIRE(loaded_preds[1].prediction.interval == Interval{5, 9});
    REQUIRE(loaded_preds[1].class_name == "jump");
}

TEST_CASE("config files round trip") {
    TempDir dir;
    Skeleton s = default_skeleton();
    detail::save_json_file(dir.file("skel.json"), skeleton_to_json(s));
    Skeleton s2 = load_skeleton(dir.file("skel.json"));
    REQUIRE(s2.joint_names == s.joint_names);
    REQUIRE(s2.parents == s.parents);
    REQUIRE(s2.left_right_pairs == s.left_right_pairs);

    BinConfig bins = default_bin_config();
    detail::save_json_file(dir.file("bins.json"), bin_config_to_json(bins));
    BinConfig bins2 = load_bin_config(dir.file("bins.json"));
    REQUIRE(bins2.schemes.size() == bins.schemes.size());
    REQUIRE(bins2.scheme("angle").labels == bins.scheme("angle").labels);
    REQUIRE(bins2.scheme("angle").edges == bins.scheme("angle").edges);

    auto roster = default_roster(s);
    detail::save_json_file(dir.file("roster.json"), roster_to_json(roster, s));
    auto roster2 = load_roster(dir.file("roster.json"), s);
    REQUIRE(roster2.size() == roster.size());
    for (std::size_t i = 0; i < roster.size(); ++i) {
        REQUIRE(roster2[i].id == roster[i].id);
        REQUIRE(roster2[i].subject == roster[i].subject);
        REQUIRE(roster2[i].kind.type == roster[i].kind.type);
        for (int k = 0; k < 3; ++k)
            REQUIRE(roster2[i].kind.joints[k] == roster[i].kind.joints[k]);
    }

    TemplateSet templates = default_templates();
    detail::save_json_file(dir.file("tpl.json"), templates_to_json(templates));
    TemplateSet templates2 = load_templates(dir.file("tpl.json"));
    REQUIRE(templates2.by_category.size() == templates.by_category.size());
    REQUIRE(templates2.by_category.at("angle").variants ==
            templates.by_category.at("angle").variants);
}

TEST_CASE("mix_datasets: window ratios, determinism, wrap counting") {
    std::vector<MixSource> sources;
    auto make_source = [](const std::string& name, int weight, int lines) {
        MixSource s;
        s.name = name;
        s.weight = weight;
        for (int i = 0; i < lines; ++i) s.lines.push_back(name + ":" + std::to_string(i));
        return s;
    };
    sources.push_back(make_source("smpltext", 1, 50));
    sources.push_back(make_source("shotgpt", 5, 40));
    sources.push_back(make_source("general", 5, 500));

    MixSpec spec;
    spec.total = 1100;
    spec.seed = 7;
    MixResult r = mix_datasets(sources, spec);
    REQUIRE(r.lines.size() == 1100);

    // Every window of 11 items carries exactly 1/5/5 lines per source.
    for (std::size_t w = 0; w + 11 <= r.source_of.size(); w += 11) {
        std::map<std::string, int> counts;
        for (std::size_t i = w; i < w + 11; ++i) counts[r.source_of[i]] += 1;
        REQUIRE(counts["smpltext"] == 1);
        REQUIRE(counts["shotgpt"] == 5);
        REQUIRE(counts["general"] == 5);
    }

    // shotgpt contributes 500 lines from a 40-line source: it must wrap.
    REQUIRE(r.wrap_counts["shotgpt"] >= 11);
    REQUIRE(r.wrap_counts["general"] == 0);

    MixResult again = mix_datasets(sources, spec);
    REQUIRE(again.lines == r.lines);
    spec.seed = 8;
    REQUIRE(mix_datasets(sources, spec).lines != r.lines);
}

TEST_CASE("mix_datasets: single source is a seeded permutation") {
    std::vector<MixSource> sources(1);
    sources[0].name = "only";
    sources[0].weight = 3;
    for (int i = 0; i < 30; ++i) sources[0].lines.push_back("line" + std::to_string(i));

    MixSpec spec;
    spec.total = 30;
    spec.seed = 21;
    MixResult r = mix_datasets(sources, spec);
    REQUIRE(r.lines.size() == 30);
    auto sorted = r.lines;
    std::sort(sorted.begin(), sorted.end());
    auto expect = sources[0].lines;
    std::sort(expect.begin(), expect.end());
    REQUIRE(sorted == expect);       // a permutation...
    REQUIRE(r.lines != sources[0].lines);  // ...that actually shuffles

    MixSource empty;
    empty.name = "none";
    REQUIRE_THROWS_AS(mix_datasets({empty}, spec), InputError);
}
