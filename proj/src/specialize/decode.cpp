#include "saga/specialize.hpp"

namespace saga::specialize {

DecodedCondition decode_condition(int raw) { return {raw % 20, raw / 20}; }

DecodedActionWord decode_action_word(int raw) { return {raw / 150, raw % 150}; }

Trigger decode_vocab(int raw) {
  const int verb = raw / 150;
  const int noun = raw % 150;
  if (verb == 0) return AutoTrigger{noun};
  return CommandTrigger{verb, noun, noun == 0};
}

bool is_condition_opcode(int opcode) { return opcode >= 0 && opcode <= 19; }

std::optional<EffectOp> effect_op_for(int act) {
  if (act == 0) return EffectOp::kNop;
  if ((act >= 1 && act <= 51) || act >= 102) return EffectOp::kMessage;
  if (act >= 52 && act <= 89) return static_cast<EffectOp>(act);
  return std::nullopt;
}

int message_for_act(int act) { return act >= 102 ? act - 50 : act; }

int act_for_message(int message) { return message <= 51 ? message : message + 50; }

std::vector<OperandKind> operand_kinds(EffectOp op) {
  using K = OperandKind;
  switch (op) {
    case EffectOp::kGet:
    case EffectOp::kDrop:
    case EffectOp::kRemove:
    case EffectOp::kRemove2:
    case EffectOp::kTake:
      return {K::kItem};
    case EffectOp::kGoto:
      return {K::kRoom};
    case EffectOp::kSetFlag:
    case EffectOp::kClearFlag:
      return {K::kFlag};
    case EffectOp::kPutItem:
      return {K::kItem, K::kRoomOrCarried};
    case EffectOp::kSwapItems:
    case EffectOp::kPutWith:
      return {K::kItem, K::kItem};
    case EffectOp::kSetCounter:
    case EffectOp::kAddCounter:
    case EffectOp::kSubCounter:
      return {K::kCounterValue};
    case EffectOp::kSelectCounter:
      return {K::kCounterSlot};
    case EffectOp::kSwapSavedRoom:
      return {K::kSavedRoomSlot};
    default:
      return {};
  }
}

std::optional<OperandKind> condition_param_kind(ConditionOp op) {
  switch (op) {
    case ConditionOp::kCarried:
    case ConditionOp::kHere:
    case ConditionOp::kPresent:
    case ConditionOp::kNotHere:
    case ConditionOp::kNotCarried:
    case ConditionOp::kNotPresent:
    case ConditionOp::kInPlay:
    case ConditionOp::kNotInPlay:
    case ConditionOp::kAtInitial:
    case ConditionOp::kMoved:
      return OperandKind::kItem;
    case ConditionOp::kInRoom:
    case ConditionOp::kNotInRoom:
      return OperandKind::kRoom;
    case ConditionOp::kFlagSet:
    case ConditionOp::kFlagClear:
      return OperandKind::kFlag;
    default:
      return std::nullopt;
  }
}

const char* condition_name(ConditionOp op) {
  switch (op) {
    case ConditionOp::kParam: return "param";
    case ConditionOp::kCarried: return "carried";
    case ConditionOp::kHere: return "here";
    case ConditionOp::kPresent: return "present";
    case ConditionOp::kInRoom: return "in_room";
    case ConditionOp::kNotHere: return "not_here";
    case ConditionOp::kNotCarried: return "not_carried";
    case ConditionOp::kNotInRoom: return "not_in_room";
    case ConditionOp::kFlagSet: return "flag_set";
    case ConditionOp::kFlagClear: return "flag_clear";
    case ConditionOp::kCarryingAny: return "carrying_any";
    case ConditionOp::kCarryingNone: return "carrying_none";
    case ConditionOp::kNotPresent: return "not_present";
    case ConditionOp::kInPlay: return "in_play";
    case ConditionOp::kNotInPlay: return "not_in_play";
    case ConditionOp::kCounterLe: return "counter_le";
    case ConditionOp::kCounterGt: return "counter_gt";
    case ConditionOp::kAtInitial: return "at_initial";
    case ConditionOp::kMoved: return "moved";
    case ConditionOp::kCounterEq: return "counter_eq";
  }
  return "?";
}

const char* effect_name(EffectOp op) {
  switch (op) {
    case EffectOp::kNop: return "nop";
    case EffectOp::kMessage: return "message";
    case EffectOp::kGet: return "get";
    case EffectOp::kDrop: return "drop";
    case EffectOp::kGoto: return "goto";
    case EffectOp::kRemove: return "remove";
    case EffectOp::kSetDark: return "set_dark";
    case EffectOp::kClearDark: return "clear_dark";
    case EffectOp::kSetFlag: return "set_flag";
    case EffectOp::kRemove2: return "remove";
    case EffectOp::kClearFlag: return "clear_flag";
    case EffectOp::kDie: return "die";
    case EffectOp::kPutItem: return "put_item";
    case EffectOp::kGameOver: return "game_over";
    case EffectOp::kLook: return "look";
    case EffectOp::kScore: return "score";
    case EffectOp::kInventory: return "inventory";
    case EffectOp::kSetFlag0: return "set_flag0";
    case EffectOp::kClearFlag0: return "clear_flag0";
    case EffectOp::kRefillLamp: return "refill_lamp";
    case EffectOp::kClearScreen: return "clear_screen";
    case EffectOp::kSave: return "save";
    case EffectOp::kSwapItems: return "swap_items";
    case EffectOp::kContinue: return "continue";
    case EffectOp::kTake: return "take";
    case EffectOp::kPutWith: return "put_with";
    case EffectOp::kLook2: return "look";
    case EffectOp::kDecCounter: return "dec_counter";
    case EffectOp::kPrintCounter: return "print_counter";
    case EffectOp::kSetCounter: return "set_counter";
    case EffectOp::kSwapRoom: return "swap_room";
    case EffectOp::kSelectCounter: return "select_counter";
    case EffectOp::kAddCounter: return "add_counter";
    case EffectOp::kSubCounter: return "sub_counter";
    case EffectOp::kPrintNoun: return "print_noun";
    case EffectOp::kPrintNounLine: return "print_noun_line";
    case EffectOp::kNewline: return "newline";
    case EffectOp::kSwapSavedRoom: return "swap_saved_room";
    case EffectOp::kPause: return "pause";
    case EffectOp::kNop89: return "nop";
  }
  return "?";
}

}  // namespace saga::specialize
