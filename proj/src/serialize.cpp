#include "jcpost/serialize.hpp"

namespace jcpost {

Table sweep_table(const std::vector<SweepRow>& rows, const std::string& x_name,
                  const MetaList& meta) {
    Table table;
    table.meta = meta;
    table.columns = {x_name,    "channel", "mean_in",        "mean_out", "fraction",
                     "success", "dim",     "top_population", "flag"};
    table.rows.reserve(rows.size());
    for (const SweepRow& row : rows) {
        table.rows.push_back({row.x, std::string(channel_name(row.kind)), row.mean_in,
                              row.mean_out, row.fraction, row.success,
                              static_cast<std::int64_t>(row.dim_used), row.top_population,
                              row.flag});
    }
    return table;
}

Table qgrid_table(const QGrid& grid, const MetaList& meta) {
    Table table;
    table.meta = meta;
    table.meta.emplace_back("re_min", format_double(grid.spec.re_min));
    table.meta.emplace_back("re_max", format_double(grid.spec.re_max));
    table.meta.emplace_back("im_min", format_double(grid.spec.im_min));
    table.meta.emplace_back("im_max", format_double(grid.spec.im_max));
    table.meta.emplace_back("n_re", std::to_string(grid.spec.n_re));
    table.meta.emplace_back("n_im", std::to_string(grid.spec.n_im));
    table.columns = {"re", "im", "q"};
    table.rows.reserve(static_cast<std::size_t>(grid.spec.n_re) * grid.spec.n_im);
    for (int i = 0; i < grid.spec.n_im; ++i)
        for (int j = 0; j < grid.spec.n_re; ++j)
            table.rows.push_back({grid.spec.re_at(j), grid.spec.im_at(i), grid.values(i, j)});
    return table;
}

}  // namespace jcpost
