#include "coastseg/reports.hpp"

#include <cmath>
#include <cstdio>

#include "coastseg/textio.hpp"

namespace coastseg {

std::string format_cell(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string format_mean_std(double mean, double std_dev) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%.4f ± %.4f", mean, std_dev);
    return buf;
}

MeanStd mean_std(const std::vector<double>& values) {
    MeanStd out;
    if (values.empty()) return out;
    for (double v : values) out.mean += v;
    out.mean /= static_cast<double>(values.size());
    double acc = 0.0;
    for (double v : values) {
        const double d = v - out.mean;
        acc += d * d;
    }
    out.std_dev = std::sqrt(acc / static_cast<double>(values.size()));
    return out;
}

std::string render_train_report_csv(const TrainReport& report) {
    std::string out =
        "epoch,loss_robust,loss_ce,loss_hsv,loss_coast,loss_conn,loss_sea,"
        "grad_norm,val_iou,val_f1,val_accuracy\n";
    for (const EpochRecord& r : report.epochs) {
        out += std::to_string(r.epoch);
        for (double v : {r.loss_robust, r.loss_ce, r.loss_hsv, r.loss_coast, r.loss_conn,
                         r.loss_sea, r.grad_norm, r.val_iou, r.val_f1, r.val_accuracy}) {
            out += ',';
            out += format_cell(v);
        }
        out += '\n';
    }
    return out;
}

void write_train_report_csv(const std::string& path, const TrainReport& report) {
    write_text_atomic(path, render_train_report_csv(report));
}

std::string render_train_summary(const TrainSummary& s) {
    std::string out;
    out += "final_iou=" + format_cell(s.final_iou) + "\n";
    out += "final_f1=" + format_cell(s.final_f1) + "\n";
    out += "final_accuracy=" + format_cell(s.final_accuracy) + "\n";
    out += "late_iou_variance=" + format_cell(s.late_iou_variance) + "\n";
    out += "lipschitz_estimate=" + format_cell(s.lipschitz_estimate) + "\n";
    out += "rho=" + format_cell(s.rho) + "\n";
    out += std::string("rho_degenerate=") + (s.rho_degenerate ? "true" : "false") + "\n";
    return out;
}

void write_train_summary(const std::string& path, const TrainSummary& summary) {
    write_text_atomic(path, render_train_summary(summary));
}

std::string render_ablation_csv(const std::vector<AblationRow>& rows) {
    std::string out =
        "config,seed,lambda_ce,lambda_hsv,lambda_coast,lambda_conn,lambda_sea,"
        "final_iou,late_iou_variance,delta_iou_vs_full\n";
    for (const AblationRow& r : rows) {
        out += r.config_name;
        out += ',';
        out += std::to_string(r.seed);
        for (double v : {r.weights.lambda_ce, r.weights.lambda_hsv, r.weights.lambda_coast,
                         r.weights.lambda_conn, r.weights.lambda_sea, r.final_iou,
                         r.late_iou_variance, r.delta_vs_full}) {
            out += ',';
            out += format_cell(v);
        }
        out += '\n';
    }
    return out;
}

void write_ablation_csv(const std::string& path, const std::vector<AblationRow>& rows) {
    write_text_atomic(path, render_ablation_csv(rows));
}

std::string render_eval_csv(const std::vector<EvalRow>& rows) {
    std::string out = "scene,iou,f1,accuracy\n";
    std::vector<double> ious, f1s, accs;
    ious.reserve(rows.size());
    f1s.reserve(rows.size());
    accs.reserve(rows.size());
    for (const EvalRow& r : rows) {
        out += r.scene_id;
        for (double v : {r.metrics.iou, r.metrics.f1, r.metrics.accuracy}) {
            out += ',';
            out += format_cell(v);
        }
        out += '\n';
        ious.push_back(r.metrics.iou);
        f1s.push_back(r.metrics.f1);
        accs.push_back(r.metrics.accuracy);
    }
    const MeanStd iou = mean_std(ious);
    const MeanStd f1 = mean_std(f1s);
    const MeanStd acc = mean_std(accs);
    out += "aggregate," + format_mean_std(iou.mean, iou.std_dev) + "," +
           format_mean_std(f1.mean, f1.std_dev) + "," + format_mean_std(acc.mean, acc.std_dev) +
           "\n";
    return out;
}

void write_eval_csv(const std::string& path, const std::vector<EvalRow>& rows) {
    write_text_atomic(path, render_eval_csv(rows));
}

}  // namespace coastseg
