#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace streambias {

using RecordId = std::uint64_t;
using Timestamp = std::int64_t;  // epoch seconds, UTC

enum class Source { Streaming, Sample, Firehose };

std::string_view to_string(Source source) noexcept;

/// One observed message. `tags` is kept sorted and free of duplicates, so two
/// records with the same tag set compare equal.
struct TweetRecord {
  RecordId id = 0;
  Timestamp ts = 0;
  std::vector<std::string> tags;
  Source source = Source::Firehose;

  bool operator==(const TweetRecord&) const = default;
};

/// Lowercases ASCII letters and strips a single leading '#'.
std::string normalize_hashtag(std::string_view raw);

/// Parses newline-delimited records. Each non-blank line must be an object
/// with exactly the keys `id`, `ts` and `tags`. Throws ParseError (with line
/// number) on malformed input and DuplicateIdError on a repeated id.
std::vector<TweetRecord> parse_stream(std::istream& in, Source source,
                                      std::string_view origin = "<stream>");
std::vector<TweetRecord> parse_stream(const std::filesystem::path& path, Source source);

/// Writes records in the same line format `parse_stream` reads.
void write_stream(std::ostream& out, std::span<const TweetRecord> records);
void write_stream(const std::filesystem::path& path, std::span<const TweetRecord> records);

struct Occurrence {
  RecordId id = 0;
  Timestamp ts = 0;

  auto operator<=>(const Occurrence& other) const {
    if (auto c = ts <=> other.ts; c != 0) return c;
    return id <=> other.id;
  }
  bool operator==(const Occurrence&) const = default;
};

/// Hashtag -> occurrences, each list ordered by (ts, id). Records without
/// tags are counted in total_records() but never appear under a key.
class HashtagIndex {
 public:
  using Map = std::map<std::string, std::vector<Occurrence>, std::less<>>;

  /// Empty span for unknown hashtags.
  std::span<const Occurrence> occurrences(std::string_view hashtag) const;
  std::size_t count(std::string_view hashtag) const { return occurrences(hashtag).size(); }
  bool contains(std::string_view hashtag) const { return entries_.find(hashtag) != entries_.end(); }

  std::size_t total_records() const noexcept { return total_records_; }
  std::size_t distinct_hashtags() const noexcept { return entries_.size(); }
  const Map& entries() const noexcept { return entries_; }

 private:
  friend HashtagIndex build_index(std::span<const TweetRecord> records);

  Map entries_;
  std::size_t total_records_ = 0;
};

HashtagIndex build_index(std::span<const TweetRecord> records);

struct HashtagCount {
  std::string hashtag;
  std::size_t count = 0;

  bool operator==(const HashtagCount&) const = default;
};

/// Count descending, hashtag ascending on ties; length min(k, distinct).
std::vector<HashtagCount> top_k_hashtags(const HashtagIndex& index, std::size_t k);

/// Full ranking straight from records, same ordering as top_k_hashtags.
std::vector<HashtagCount> rank_hashtags(std::span<const TweetRecord> records);

}  // namespace streambias
