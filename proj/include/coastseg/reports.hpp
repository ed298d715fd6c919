#pragma once

#include <string>
#include <vector>

#include "coastseg/trainer.hpp"

namespace coastseg {

// CSV / plain-text report writers. Numeric cells use "%.12g" so files are
// deterministic and diffable; the eval aggregate row uses the
// "mean ± std" presentation with four decimals.

std::string format_cell(double v);
std::string format_mean_std(double mean, double std_dev);

struct MeanStd {
    double mean = 0.0;
    double std_dev = 0.0;  // population standard deviation
};
MeanStd mean_std(const std::vector<double>& values);

// epoch,loss_robust,loss_ce,loss_hsv,loss_coast,loss_conn,loss_sea,
// grad_norm,val_iou,val_f1,val_accuracy
std::string render_train_report_csv(const TrainReport& report);
void write_train_report_csv(const std::string& path, const TrainReport& report);

// key=value lines, one per summary field
std::string render_train_summary(const TrainSummary& summary);
void write_train_summary(const std::string& path, const TrainSummary& summary);

// config,seed,lambda_ce,lambda_hsv,lambda_coast,lambda_conn,lambda_sea,
// final_iou,late_iou_variance,delta_iou_vs_full
std::string render_ablation_csv(const std::vector<AblationRow>& rows);
void write_ablation_csv(const std::string& path, const std::vector<AblationRow>& rows);

struct EvalRow {
    std::string scene_id;
    Metrics metrics;
};

// scene,iou,f1,accuracy with one trailing aggregate row in mean ± std form
std::string render_eval_csv(const std::vector<EvalRow>& rows);
void write_eval_csv(const std::string& path, const std::vector<EvalRow>& rows);

}  // namespace coastseg
