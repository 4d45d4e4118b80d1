#include "streambias/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "streambias/error.hpp"

namespace streambias {

namespace {

using json = nlohmann::json;

TweetRecord parse_line(const std::string& line, Source source, const std::string& origin,
                       std::size_t line_no) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(origin, line_no, std::string("invalid JSON: ") + e.what());
  }
  if (!obj.is_object()) throw ParseError(origin, line_no, "record is not an object");
  for (const auto& [key, _] : obj.items()) {
    if (key != "id" && key != "ts" && key != "tags") {
      throw ParseError(origin, line_no, "unknown key '" + key + "'");
    }
  }
  for (const char* key : {"id", "ts", "tags"}) {
    if (!obj.contains(key)) {
      throw ParseError(origin, line_no, std::string("missing key '") + key + "'");
    }
  }

  TweetRecord rec;
  rec.source = source;

  const auto& id = obj["id"];
  if (!id.is_number_unsigned()) {
    throw ParseError(origin, line_no, "'id' must be a non-negative integer");
  }
  rec.id = id.get<RecordId>();

  const auto& ts = obj["ts"];
  if (ts.is_number_unsigned()) {
    auto v = ts.get<std::uint64_t>();
    if (v > static_cast<std::uint64_t>(std::numeric_limits<Timestamp>::max())) {
      throw ParseError(origin, line_no, "'ts' out of range");
    }
    rec.ts = static_cast<Timestamp>(v);
  } else if (ts.is_number_integer()) {
    rec.ts = ts.get<Timestamp>();
  } else {
    throw ParseError(origin, line_no, "'ts' must be an integer");
  }

  const auto& tags = obj["tags"];
  if (!tags.is_array()) throw ParseError(origin, line_no, "'tags' must be an array");
  rec.tags.reserve(tags.size());
  for (const auto& tag : tags) {
    if (!tag.is_string()) throw ParseError(origin, line_no, "'tags' entries must be strings");
    auto norm = normalize_hashtag(tag.get_ref<const std::string&>());
    if (norm.empty()) throw ParseError(origin, line_no, "empty hashtag");
    rec.tags.push_back(std::move(norm));
  }
  std::sort(rec.tags.begin(), rec.tags.end());
  rec.tags.erase(std::unique(rec.tags.begin(), rec.tags.end()), rec.tags.end());
  return rec;
}

bool is_blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return c == ' ' || c == '\t' || c == '\r'; });
}

std::vector<HashtagCount> sort_ranking(std::vector<HashtagCount> ranking) {
  std::sort(ranking.begin(), ranking.end(), [](const HashtagCount& a, const HashtagCount& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.hashtag < b.hashtag;
  });
  return ranking;
}

}  // namespace

std::string_view to_string(Source source) noexcept {
  switch (source) {
    case Source::Streaming: return "streaming";
    case Source::Sample: return "sample";
    case Source::Firehose: return "firehose";
  }
  return "unknown";
}

std::string normalize_hashtag(std::string_view raw) {
  if (!raw.empty() && raw.front() == '#') raw.remove_prefix(1);
  std::string out(raw);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<TweetRecord> parse_stream(std::istream& in, Source source, std::string_view origin) {
  const std::string origin_str(origin);
  std::vector<TweetRecord> records;
  std::unordered_set<RecordId> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    auto rec = parse_line(line, source, origin_str, line_no);
    if (!seen.insert(rec.id).second) throw DuplicateIdError(origin_str, line_no, rec.id);
    records.push_back(std::move(rec));
  }
  if (in.bad()) throw Error(origin_str + ": read error");
  return records;
}

std::vector<TweetRecord> parse_stream(const std::filesystem::path& path, Source source) {
  std::ifstream in(path);
  if (!in) throw Error(path.string() + ": cannot open for reading");
  return parse_stream(in, source, path.string());
}

void write_stream(std::ostream& out, std::span<const TweetRecord> records) {
  for (const auto& rec : records) {
    nlohmann::ordered_json obj;
    obj["id"] = rec.id;
    obj["ts"] = rec.ts;
    obj["tags"] = rec.tags;
    out << obj.dump() << '\n';
  }
}

void write_stream(const std::filesystem::path& path, std::span<const TweetRecord> records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(path.string() + ": cannot open for writing");
  write_stream(out, records);
  if (!out) throw Error(path.string() + ": write failed");
}

std::span<const Occurrence> HashtagIndex::occurrences(std::string_view hashtag) const {
  auto it = entries_.find(hashtag);
  if (it == entries_.end()) return {};
  return it->second;
}

HashtagIndex build_index(std::span<const TweetRecord> records) {
  HashtagIndex index;
  index.total_records_ = records.size();
  for (const auto& rec : records) {
    for (const auto& tag : rec.tags) {
      auto it = index.entries_.find(tag);
      if (it == index.entries_.end()) it = index.entries_.emplace(tag, std::vector<Occurrence>{}).first;
      it->second.push_back({rec.id, rec.ts});
    }
  }
  for (auto& [_, occ] : index.entries_) std::sort(occ.begin(), occ.end());
  return index;
}

std::vector<HashtagCount> top_k_hashtags(const HashtagIndex& index, std::size_t k) {
  std::vector<HashtagCount> ranking;
  ranking.reserve(index.distinct_hashtags());
  for (const auto& [tag, occ] : index.entries()) ranking.push_back({tag, occ.size()});
  ranking = sort_ranking(std::move(ranking));
  if (ranking.size() > k) ranking.resize(k);
  return ranking;
}

std::vector<HashtagCount> rank_hashtags(std::span<const TweetRecord> records) {
  std::unordered_map<std::string_view, std::size_t> counts;
  for (const auto& rec : records) {
    for (const auto& tag : rec.tags) ++counts[tag];
  }
  std::vector<HashtagCount> ranking;
  ranking.reserve(counts.size());
  for (const auto& [tag, n] : counts) ranking.push_back({std::string(tag), n});
  return sort_ranking(std::move(ranking));
}

}  // namespace streambias
