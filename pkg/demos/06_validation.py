"""Validating model scores against game ground truth.

Game accuracy (correct clicks plus correct answers over all events) is
the reference the model scores are checked against, with MAE, RMSE and
the two correlation coefficients, plus calibration labels per level.
"""
from gazescore import (
    GameEvent,
    classify_assessment,
    game_accuracy,
    mae,
    pearson,
    rmse,
    spearman,
    validate_scores,
)


def events(correct_clicks, total_clicks, correct_answers, total_answers):
    out = [GameEvent(i, "mouse_click", i < correct_clicks) for i in range(total_clicks)]
    out += [GameEvent(i, "answer", i < correct_answers) for i in range(total_answers)]
    return out


print("1. Game accuracy per level:")
rows = [
    (1, events(15, 18, 36, 36)),
    (2, events(11, 11, 33, 34)),
    (3, events(10, 13, 31, 34)),
]
truth = []
for level, evs in rows:
    performance = game_accuracy(evs)
    truth.append(performance.accuracy_pct)
    print(f"   level {level}: clicks {performance.correct_clicks}/{performance.total_clicks}, "
          f"answers {performance.correct_answers}/{performance.total_answers} "
          f"-> {performance.accuracy_pct:.1f}%")

print("\n2. Error and correlation metrics for a score series:")
model = [99.7, 99.0, 98.9]
print(f"   model {model} vs truth {[round(t, 1) for t in truth]}")
print(f"   MAE      {mae(model, truth):.2f}")
print(f"   RMSE     {rmse(model, truth):.2f}")
print(f"   Pearson  {pearson(model, truth):.3f}")
print(f"   Spearman {spearman(model, truth):.3f}")

print("\n3. Undefined cases stay undefined instead of pretending to be zero:")
report = validate_scores([88.0], [90.0])
print(f"   single pair: mae {report.mae_pct:.1f}, pearson {report.pearson_r}, "
      f"spearman {report.spearman_rho}")
report = validate_scores([75.0, 75.0, 75.0], truth)
print(f"   constant model series: pearson {report.pearson_r}, spearman {report.spearman_rho}")

print("\n4. Assessment labels from score and calibration difference:")
for score, accuracy in zip(model, truth):
    category, calibration = classify_assessment(score, abs(score - accuracy))
    print(f"   score {score:5.1f} vs accuracy {accuracy:5.1f} "
          f"-> {category.value}, calibration {calibration.value}")
