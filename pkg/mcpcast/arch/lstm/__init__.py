from .module import LSTM, LstmCell, LstmState

arch_cls = LSTM
