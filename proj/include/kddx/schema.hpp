#pragma once

#include <array>
#include <cstddef>
#include <string_view>

namespace kddx {

// The KDD Cup 1999 connection-record schema is fixed: 41 features plus a
// trailing label. Positions are hard-coded on purpose; inferring them from
// data invites silent misreads on a benchmark that never changes.
inline constexpr std::size_t kNumFeatures = 41;

enum class ColumnKind { Numeric, Categorical };

struct ColumnSpec {
    std::string_view name;
    ColumnKind kind;
};

inline constexpr std::array<ColumnSpec, kNumFeatures> kSchema{{
    {"duration", ColumnKind::Numeric},
    {"protocol_type", ColumnKind::Categorical},
    {"service", ColumnKind::Categorical},
    {"flag", ColumnKind::Categorical},
    {"src_bytes", ColumnKind::Numeric},
    {"dst_bytes", ColumnKind::Numeric},
    {"land", ColumnKind::Numeric},
    {"wrong_fragment", ColumnKind::Numeric},
    {"urgent", ColumnKind::Numeric},
    {"hot", ColumnKind::Numeric},
    {"num_failed_logins", ColumnKind::Numeric},
    {"logged_in", ColumnKind::Numeric},
    {"num_compromised", ColumnKind::Numeric},
    {"root_shell", ColumnKind::Numeric},
    {"su_attempted", ColumnKind::Numeric},
    {"num_root", ColumnKind::Numeric},
    {"num_file_creations", ColumnKind::Numeric},
    {"num_shells", ColumnKind::Numeric},
    {"num_access_files", ColumnKind::Numeric},
    {"num_outbound_cmds", ColumnKind::Numeric},
    {"is_host_login", ColumnKind::Numeric},
    {"is_guest_login", ColumnKind::Numeric},
    {"count", ColumnKind::Numeric},
    {"srv_count", ColumnKind::Numeric},
    {"serror_rate", ColumnKind::Numeric},
    {"srv_serror_rate", ColumnKind::Numeric},
    {"rerror_rate", ColumnKind::Numeric},
    {"srv_rerror_rate", ColumnKind::Numeric},
    {"same_srv_rate", ColumnKind::Numeric},
    {"diff_srv_rate", ColumnKind::Numeric},
    {"srv_diff_host_rate", ColumnKind::Numeric},
    {"dst_host_count", ColumnKind::Numeric},
    {"dst_host_srv_count", ColumnKind::Numeric},
    {"dst_host_same_srv_rate", ColumnKind::Numeric},
    {"dst_host_diff_srv_rate", ColumnKind::Numeric},
    {"dst_host_same_src_port_rate", ColumnKind::Numeric},
    {"dst_host_srv_diff_host_rate", ColumnKind::Numeric},
    {"dst_host_serror_rate", ColumnKind::Numeric},
    {"dst_host_srv_serror_rate", ColumnKind::Numeric},
    {"dst_host_rerror_rate", ColumnKind::Numeric},
    {"dst_host_srv_rerror_rate", ColumnKind::Numeric},
}};

inline constexpr std::array<std::size_t, 3> kCategoricalColumns{1, 2, 3};

inline constexpr bool is_categorical(std::size_t col) {
    return col == 1 || col == 2 || col == 3;
}

}  // namespace kddx
