from .module import DNN

arch_cls = DNN
