#include "roofem/kernel_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "roofem/errors.hpp"
#include "roofem/keyval.hpp"
#include "roofem/text.hpp"

namespace roofem {

void validate_stream(const TrafficStream& s) {
    const std::string where = "stream '" + s.label + "'";
    if (s.element_bytes != 1 && s.element_bytes != 2 && s.element_bytes != 4 &&
        s.element_bytes != 8)
        throw ValidationError(where + ": field 'element_bytes' must be one of 1, 2, 4, 8");
    if (s.direction == StreamDirection::load && s.write_allocate)
        throw ValidationError(where + ": field 'write_allocate' is only valid on stores");
}

void validate_kernel_spec(const KernelSpec& k) {
    if (k.name.empty())
        throw ValidationError("kernel spec: field 'name' must be non-empty");
    for (const TrafficStream& s : k.streams_single) validate_stream(s);
    if (k.streams_multi)
        for (const TrafficStream& s : *k.streams_multi) validate_stream(s);
}

namespace {

TrafficVolumes stream_volumes(const std::vector<TrafficStream>& streams) {
    TrafficVolumes v;
    for (const TrafficStream& s : streams) {
        if (s.cached) continue;
        std::uint64_t bytes = s.elements_per_iter * s.element_bytes;
        if (s.direction == StreamDirection::load) {
            v.load_bytes += bytes;
        } else {
            v.store_bytes += bytes;
            if (s.write_allocate) v.load_bytes += bytes;  // line fill before the store
        }
    }
    return v;
}

} // namespace

TrafficVolumes traffic_volumes(const KernelSpec& k, ThreadVariant variant) {
    if (variant == ThreadVariant::multi && k.streams_multi)
        return stream_volumes(*k.streams_multi);
    return stream_volumes(k.streams_single);
}

double intensity(std::uint64_t n_f, std::uint64_t v_ld, std::uint64_t v_st) {
    std::uint64_t total = v_ld + v_st;
    if (total == 0)
        throw DomainError("pure compute kernel: intensity undefined for zero memory traffic");
    return static_cast<double>(n_f) / static_cast<double>(total);
}

std::int64_t rational_hundredths(std::uint64_t num, std::uint64_t den) {
    // round(100 * num / den), half away from zero; operands are small enough
    // (table-scale byte counts) that 200*num cannot overflow.
    return static_cast<std::int64_t>((200 * num + den) / (2 * den));
}

std::int64_t published_hundredths(double value) {
    return std::llround(value * 100.0);
}

KernelTable kernel_table(const std::vector<KernelSpec>& kernels, ThreadVariant variant) {
    KernelTable table;
    for (const KernelSpec& k : kernels) {
        validate_kernel_spec(k);

        bool fallback = variant == ThreadVariant::multi && !k.streams_multi;
        TrafficVolumes v = traffic_volumes(k, variant);
        std::uint64_t total = v.load_bytes + v.store_bytes;
        if (total == 0) {
            table.notices.push_back("kernel '" + k.name +
                                    "' skipped: no memory traffic for requested variant");
            continue;
        }
        if (fallback)
            table.notices.push_back("kernel '" + k.name +
                                    "' has no multi-threaded model; using single-threaded "
                                    "streams");

        IntensityResult row;
        row.kernel = k.name;
        row.v_load_bytes = v.load_bytes;
        row.v_store_bytes = v.store_bytes;
        row.flops = k.flops_per_iter;
        row.total_bytes = total;
        row.intensity_fpb = intensity(k.flops_per_iter, v.load_bytes, v.store_bytes);
        row.variant = variant;
        row.used_single_fallback = fallback;
        row.published_value = (variant == ThreadVariant::multi && !fallback)
                                  ? k.published_intensity_multi
                                  : k.published_intensity;
        if (row.published_value) {
            std::int64_t computed = rational_hundredths(row.flops, row.total_bytes);
            std::int64_t published = published_hundredths(*row.published_value);
            row.mismatch_flag = std::abs(computed - published) > 1;
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

namespace {

TrafficStream parse_stream(const Section& section, std::string* variant_out) {
    FieldReader fields(section, "stream");
    TrafficStream s;
    s.label = fields.require_string("label");
    std::string dir = fields.require_string("direction");
    if (dir == "load") s.direction = StreamDirection::load;
    else if (dir == "store") s.direction = StreamDirection::store;
    else
        throw SyntaxError("line " + std::to_string(section.line) + ": stream '" + s.label +
                          "': direction must be 'load' or 'store', got '" + dir + "'");
    s.elements_per_iter = fields.require_uint64("elements_per_iter");
    s.element_bytes = static_cast<std::uint32_t>(fields.require_uint64("element_bytes"));
    s.write_allocate = fields.optional_bool("write_allocate", false);
    s.cached = fields.optional_bool("cached", false);
    *variant_out = fields.optional_string("variant").value_or("single");
    fields.finish();
    validate_stream(s);
    return s;
}

} // namespace

KernelSpec load_kernel_spec(std::string_view source) {
    KeyValDocument doc = parse_keyval(source);
    if (doc.sections.size() == 1 && doc.sections[0].entries.empty())
        throw SyntaxError("kernel spec: empty input");
    FieldReader preamble(doc.sections[0], "kernel spec");

    KernelSpec k;
    k.name = preamble.require_string("name");
    k.hotspot = preamble.optional_int("hotspot").value_or(0);
    k.flops_per_iter = preamble.require_uint64("flops_per_iter");
    k.published_intensity = preamble.optional_double("published_intensity");
    k.published_intensity_multi = preamble.optional_double("published_intensity_multi");
    preamble.finish();

    bool any_multi = false;
    std::vector<TrafficStream> multi;
    for (std::size_t i = 1; i < doc.sections.size(); ++i) {
        const Section& section = doc.sections[i];
        if (section.name != "stream")
            throw SyntaxError("line " + std::to_string(section.line) +
                              ": unknown section '[" + section.name + "]'");
        std::string variant;
        TrafficStream s = parse_stream(section, &variant);
        if (variant == "single") {
            k.streams_single.push_back(s);
        } else if (variant == "multi") {
            multi.push_back(s);
            any_multi = true;
        } else if (variant == "both") {
            k.streams_single.push_back(s);
            multi.push_back(s);
            any_multi = true;
        } else {
            throw SyntaxError("line " + std::to_string(section.line) + ": stream '" + s.label +
                              "': variant must be single, multi, or both, got '" + variant +
                              "'");
        }
    }
    if (any_multi) k.streams_multi = std::move(multi);

    validate_kernel_spec(k);
    return k;
}

KernelSpec load_kernel_spec_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open kernel file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return load_kernel_spec(buf.str());
    } catch (const Error& e) {
        throw Error(path.string() + ": " + e.what());
    }
}

std::vector<KernelSpec> load_kernel_dir(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir))
        throw Error("kernel directory '" + dir.string() + "' does not exist");

    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".kernel")
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    std::vector<KernelSpec> kernels;
    kernels.reserve(files.size());
    for (const auto& f : files) kernels.push_back(load_kernel_spec_file(f));

    std::stable_sort(kernels.begin(), kernels.end(),
                     [](const KernelSpec& a, const KernelSpec& b) {
                         if (a.hotspot != b.hotspot) return a.hotspot < b.hotspot;
                         return a.name < b.name;
                     });
    return kernels;
}

} // namespace roofem
